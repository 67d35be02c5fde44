// hecke_trace: command-line front end over the header-only library.
//
//   hecke_trace presets
//   hecke_trace trace     --datum A2 --box 4
//   hecke_trace verify    --datum BnCn(2) --suite lusztig --box 3
//   hecke_trace series    --datum A1-weight --box 6
//   hecke_trace spherical --datum A2 --mode rational --t 1/3 --t -2/5
//
// Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hecke/suites.hpp"

using namespace hecke;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { formal, rational, complex };

struct Config {
  std::string datum = "A1-weight";
  std::string labels;
  std::int64_t box = -1;
  std::vector<std::string> t;
  std::vector<std::string> x;
  std::uint64_t seed = 1;
  std::size_t samples = 5;
  std::vector<std::string> suites;
  std::string out;
  std::string mode = "formal";
};

Mode parse_mode(const std::string& m) {
  if (m == "formal") return Mode::formal;
  if (m == "rational") return Mode::rational;
  if (m == "complex") return Mode::complex;
  throw ConfigError("unknown mode '" + m + "'");
}

json read_json_arg(const std::string& arg) {
  try {
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw ConfigError("cannot open '" + arg + "'");
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in '" + arg + "': " + e.what());
  }
}

/// Labels file: {"names": {"<node>": "<var>"}, "q": {"<var>": "<rational>" | "formal"}}.
struct LabelConfig {
  std::map<std::string, std::string> names;
  std::map<std::string, std::string> q;
};

LabelConfig read_labels(const std::string& arg) {
  LabelConfig lc;
  if (arg.empty()) return lc;
  const json j = read_json_arg(arg);
  if (!j.is_object()) throw ConfigError("labels must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "names" && k != "q") throw ConfigError("unknown labels key '" + k + "'");
  try {
    if (j.contains("names"))
      for (const auto& [k, v] : j.at("names").items()) lc.names[k] = v.get<std::string>();
    if (j.contains("q"))
      for (const auto& [k, v] : j.at("q").items()) lc.q[k] = v.is_string() ? v.get<std::string>() : v.dump();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed labels: ") + e.what());
  }
  return lc;
}

RootDatum load_datum(const std::string& d) {
  std::ifstream probe(d);
  if (probe) return RootDatum::from_json(read_json_arg(d), d);
  return build_preset(d);
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw ConfigError("not a rational number: '" + s + "'");
  r.canonicalize();
  return r;
}

Complex parse_complex(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {parse_rational(s).get_d(), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw ConfigError("not a complex number: '" + s + "'");
  }
}

Vec parse_vec(const std::string& s, std::size_t rank) {
  std::vector<long> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(std::stol(tok));
    } catch (const std::logic_error&) {
      throw ConfigError("bad vector '" + s + "'");
    }
  }
  if (v.size() != rank) throw ConfigError("vector '" + s + "' does not have rank " + std::to_string(rank));
  return Vec::from(v);
}

/// q values per variable; defaults to 4 so rational mode has v = 2.
std::vector<Rational> label_q(const LabelSet& ls, const LabelConfig& lc) {
  std::vector<Rational> q(ls.num_vars(), Rational(4));
  for (const auto& [name, val] : lc.q) {
    auto it = std::find(ls.variable_names().begin(), ls.variable_names().end(), name);
    if (it == ls.variable_names().end()) throw ConfigError("labels name unknown variable '" + name + "'");
    if (val == "formal") continue;
    Rational r = parse_rational(val);
    if (r <= 0) throw ConfigError("label value must be positive");
    q[it - ls.variable_names().begin()] = r;
  }
  return q;
}

template <class F>
LabelValues<F> label_values(const LabelSet& ls, const LabelConfig& lc);
template <>
LabelValues<Rational> label_values<Rational>(const LabelSet& ls, const LabelConfig& lc) {
  LabelValues<Rational> lv;
  for (const auto& q : label_q(ls, lc)) lv.v.push_back(rational_sqrt(q));
  return lv;
}
template <>
LabelValues<Complex> label_values<Complex>(const LabelSet& ls, const LabelConfig& lc) {
  LabelValues<Complex> lv;
  for (const auto& q : label_q(ls, lc)) lv.v.push_back(std::sqrt(Complex(q.get_d(), 0.0)));
  return lv;
}

std::size_t thread_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HECKE_TRACE_THREADS")) {
    try {
      n = std::max<std::size_t>(1, std::min<std::size_t>(n, std::stoul(env)));
    } catch (const std::logic_error&) {
      throw ConfigError("HECKE_TRACE_THREADS must be a positive integer");
    }
  }
  return n;
}

/// f(i) for i < n on a few threads; results land in index order.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn f) {
  std::vector<R> out(n);
  const std::size_t threads = std::min(thread_count(), std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t k = 0; k < threads; ++k)
    pool.emplace_back([&, k] {
      try {
        for (std::size_t i = k; i < n; i += threads) out[i] = f(i);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::unique_ptr<Workspace> workspace(const Config& c, const LabelConfig& lc) {
  RootDatum rd = load_datum(c.datum);
  auto names = lc.names.empty() ? rd.labels_hint() : lc.names;
  return std::make_unique<Workspace>(std::move(rd), names);
}

int cmd_presets(const Config& c) {
  json arr = json::array();
  for (const std::string name : {"A1-weight", "A1-root", "A2", "B2", "C2", "G2", "BnCn(2)", "BnCn(3)", "GLn(2)", "GLn(3)"}) {
    auto ws = Workspace::preset(name);
    arr.push_back({{"name", name},
                   {"rank", ws->rd.rank()},
                   {"semisimple_rank", ws->rd.semisimple_rank()},
                   {"W0_order", ws->W.order()},
                   {"label_variables", ws->labels.variable_names()},
                   {"datum", ws->rd.to_json()}});
  }
  json j{{"presets", arr}, {"families", {"BnCn(n)", "GLn(n)"}}};
  Output out(c.out);
  out.os() << j.dump(2) << "\n";
  return 0;
}

json poly_json(const Workspace& ws, const LaurentPoly& p, Mode mode, const LabelConfig& lc) {
  json j = ws.labels.to_string(p);
  if (mode == Mode::rational) return json{{"formal", j}, {"value", label_values<Rational>(ws.labels, lc).eval(p).get_str()}};
  if (mode == Mode::complex) {
    Complex v = label_values<Complex>(ws.labels, lc).eval(p);
    return json{{"formal", j}, {"value", {v.real(), v.imag()}}};
  }
  return j;
}

int cmd_trace(const Config& c) {
  const Mode mode = parse_mode(c.mode);
  const LabelConfig lc = read_labels(c.labels);
  auto ws = workspace(c, lc);
  std::vector<Vec> xs;
  for (const auto& s : c.x) xs.push_back(parse_vec(s, ws->rd.rank()));
  if (c.box >= 0)
    for (const auto& x : box_points(ws->rd.rank(), c.box)) xs.push_back(x);
  if (xs.empty()) throw ConfigError("trace needs --box or --x");
  struct Row {
    LaurentPoly partition, direct;
  };
  auto rows = parallel_map<Row>(xs.size(), [&](std::size_t i) {
    return Row{ws->tg.trace_theta_partition(xs[i]), ws->tg.trace_theta_direct(xs[i])};
  });
  bool all_equal = true;
  json records = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool eq = rows[i].partition == rows[i].direct;
    all_equal &= eq;
    records.push_back({{"x", vec_json(ws->rd, xs[i])},
                       {"partition", poly_json(*ws, rows[i].partition, mode, lc)},
                       {"direct", poly_json(*ws, rows[i].direct, mode, lc)},
                       {"equal", eq}});
  }
  json j{{"datum", ws->rd.name()}, {"labels", ws->labels.describe()}, {"records", records}, {"all_equal", all_equal}};
  Output out(c.out);
  out.os() << j.dump(2) << "\n";
  return all_equal ? 0 : 1;
}

int cmd_verify(const Config& c) {
  const Mode mode = parse_mode(c.mode);
  const LabelConfig lc = read_labels(c.labels);
  std::vector<std::string> names = c.suites;
  if (names.empty() || std::find(names.begin(), names.end(), "all") != names.end()) {
    names.clear();
    for (const auto& [n, f] : symbolic_suites()) names.push_back(n);
    names.push_back("macdonald");
  }
  for (const auto& n : names)
    if (n != "macdonald" && !symbolic_suites().count(n)) throw ConfigError("unknown suite '" + n + "'");
  auto ws = workspace(c, lc);
  SuiteOptions o;
  if (c.box >= 0) o.box = c.box;
  o.seed = c.seed;
  o.samples = c.samples;
  json arr = json::array();
  bool ok = true;
  for (const auto& n : names) {
    SuiteResult r;
    if (n == "macdonald") {
      if (mode == Mode::complex)
        r = suite_macdonald<Complex>(*ws, o, label_values<Complex>(ws->labels, lc), 1e-8);
      else
        r = suite_macdonald<Rational>(*ws, o, label_values<Rational>(ws->labels, lc), 0);
    } else {
      r = symbolic_suites().at(n)(*ws, o);
    }
    ok &= r.pass;
    arr.push_back(r.to_json());
  }
  json j{{"datum", ws->rd.name()}, {"suites", arr}, {"pass", ok}};
  Output out(c.out);
  out.os() << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_series(const Config& c) {
  const Mode mode = parse_mode(c.mode);
  const LabelConfig lc = read_labels(c.labels);
  auto ws = workspace(c, lc);
  const std::int64_t r = c.box >= 0 ? c.box : 6;
  const auto xs = box_points(ws->rd.rank(), r);
  auto vals = parallel_map<LaurentPoly>(xs.size(), [&](std::size_t i) { return ws->tg.trace_theta_partition(xs[i]); });
  json records = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!vals[i].is_zero()) records.push_back({{"x", vec_json(ws->rd, xs[i])}, {"trace", poly_json(*ws, vals[i], mode, lc)}});
  json j{{"datum", ws->rd.name()}, {"labels", ws->labels.describe()}, {"box", r}, {"records", records}};
  Output out(c.out);
  out.os() << j.dump(2) << "\n";
  return 0;
}

template <class F>
TorusPoint<F> parse_point(const std::vector<std::string>& t, std::size_t rank);
template <>
TorusPoint<Rational> parse_point<Rational>(const std::vector<std::string>& t, std::size_t rank) {
  if (t.size() != rank) throw ConfigError("--t must be given once per basis direction");
  std::vector<Rational> v;
  for (const auto& s : t) v.push_back(parse_rational(s));
  try {
    return TorusPoint<Rational>(v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}
template <>
TorusPoint<Complex> parse_point<Complex>(const std::vector<std::string>& t, std::size_t rank) {
  if (t.size() != rank) throw ConfigError("--t must be given once per basis direction");
  std::vector<Complex> v;
  for (const auto& s : t) v.push_back(parse_complex(s));
  try {
    return TorusPoint<Complex>(v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

template <class F>
int run_spherical(const Config& c, const LabelConfig& lc, Workspace& ws) {
  PrincipalSeries<F> ps(ws.I, ws.tg, label_values<F>(ws.labels, lc));
  std::vector<TorusPoint<F>> points;
  if (!c.t.empty()) {
    points.push_back(parse_point<F>(c.t, ws.rd.rank()));
  } else {
    std::mt19937_64 rng(c.seed);
    for (std::size_t k = 0; k < c.samples; ++k) points.push_back(random_generic_point(ps, ws, rng));
  }
  const auto xs = dominant_up_to(ws.rd, c.box >= 0 ? c.box : 2);
  Output out(c.out);
  std::size_t written = 0, skipped = 0;
  for (const auto& t : points)
    for (const auto& x : xs) {
      json rec{{"t", t.str()}, {"x", vec_json(ws.rd, x)}};
      try {
        const F m = ps.macdonald(t, x), d = ps.spherical(ps.theta_plus_hat(x, t));
        rec["macdonald"] = FieldTraits<F>::str(m);
        rec["direct"] = FieldTraits<F>::str(d);
        rec["diff"] = FieldTraits<F>::str(m - d);
        ++written;
      } catch (const PoleError& e) {
        rec["pole"] = true;
        rec["message"] = e.what();
        ++skipped;
      }
      out.os() << rec.dump() << "\n";
    }
  return written == 0 && skipped > 0 ? 1 : 0;
}

int cmd_spherical(const Config& c) {
  const Mode mode = parse_mode(c.mode);
  if (mode == Mode::formal) throw ConfigError("spherical needs numeric labels: use --mode rational or --mode complex");
  const LabelConfig lc = read_labels(c.labels);
  auto ws = workspace(c, lc);
  return mode == Mode::rational ? run_spherical<Rational>(c, lc, *ws) : run_spherical<Complex>(c, lc, *ws);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traces, Bernstein relations and principal series of affine Hecke algebras"};
  app.require_subcommand(1);
  Config c;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--datum", c.datum, "preset name or path to a root datum JSON file");
    sub->add_option("--labels", c.labels, "labels JSON file or inline JSON");
    sub->add_option("--mode", c.mode, "formal, rational or complex");
    sub->add_option("--out", c.out, "output path (default stdout)");
    sub->add_option("--seed", c.seed, "seed for random torus points");
  };
  auto* presets = app.add_subcommand("presets", "list preset root data");
  presets->add_option("--out", c.out, "output path (default stdout)");
  auto* trace = app.add_subcommand("trace", "tau(theta_x) by the partition formula and directly");
  common(trace);
  trace->add_option("--box", c.box, "all x with |x_i| <= box");
  trace->add_option("--x", c.x, "explicit x as comma-separated coordinates");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  common(verify);
  verify->add_option("--suite", c.suites, "suite name, or all");
  verify->add_option("--box", c.box, "box radius for box-based suites");
  verify->add_option("--samples", c.samples, "random torus points for numeric suites");
  auto* series = app.add_subcommand("series", "nonzero tau(theta_x) in a box");
  common(series);
  series->add_option("--box", c.box, "box radius (default 6)");
  auto* sph = app.add_subcommand("spherical", "spherical function against the c-function formula");
  common(sph);
  sph->add_option("--t", c.t, "torus coordinate per basis direction: num/den or re,im");
  sph->add_option("--box", c.box, "dominant x with height at most this (default 2)");
  sph->add_option("--samples", c.samples, "random points when --t is absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*presets) return cmd_presets(c);
    if (*trace) return cmd_trace(c);
    if (*verify) return cmd_verify(c);
    if (*series) return cmd_series(c);
    if (*sph) return cmd_spherical(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DatumError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LabelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
