// addcomb: command-line front end for the point-set library.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "addcomb/bounds.hpp"
#include "addcomb/digest.hpp"
#include "addcomb/generators.hpp"
#include "addcomb/io.hpp"
#include "addcomb/random.hpp"
#include "addcomb/search.hpp"
#include "addcomb/structure.hpp"
#include "addcomb/version.hpp"

namespace fs = std::filesystem;
using namespace addcomb;

namespace {

/// Bad flags or flag combinations; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Manifest {
 public:
  Manifest(int argc, char** argv) {
    command_ = "addcomb";
    for (int i = 1; i < argc; ++i) command_ += std::string(" ") + argv[i];
  }

  void set_seed(std::uint64_t s) { seeds_.push_back(s); }

  std::string input(const std::string& path) {
    const std::string bytes = read_file(path);
    inputs_.emplace_back(path, Digest().add(bytes).hex());
    return bytes;
  }

  PointSet load_set(const std::string& path) {
    const std::string bytes = input(path);
    try {
      return parse_point_set(bytes);
    } catch (const ParseError& e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }

  /// Writes to `path`, or stdout when empty.
  void emit(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
      std::cout << bytes;
      std::cout.flush();
      outputs_.emplace_back("-", Digest().add(bytes).hex());
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << bytes;
    outputs_.emplace_back(path, Digest().add(bytes).hex());
  }

  /// Deterministic header lines embedded in artifacts.
  std::vector<std::string> comments() const {
    std::vector<std::string> c{std::string("addcomb ") + kVersion, "command: " + command_};
    for (auto s : seeds_) c.push_back(std::string("rng ") + kRngName + " seed " + std::to_string(s));
    return c;
  }

  std::string comment_block() const {
    std::string out;
    for (const auto& c : comments()) out += "# " + c + "\n";
    return out;
  }

  void write_sidecar(const std::string& path) const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["version"] = kVersion;
    j["rng"] = kRngName;
    j["seeds"] = seeds_;
    auto pairs = [](const auto& v) {
      nlohmann::ordered_json a = nlohmann::ordered_json::array();
      for (const auto& [p, d] : v) a.push_back({{"path", p}, {"digest", d}});
      return a;
    };
    j["inputs"] = pairs(inputs_);
    j["outputs"] = pairs(outputs_);
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["wall_clock"] = buf;
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write manifest " + path);
    out << j.dump(2) << "\n";
  }

 private:
  std::string command_;
  std::vector<std::uint64_t> seeds_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

Point point_flag(const std::string& text, const char* flag) {
  try {
    return parse_point(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

LinearMap map_flag(const std::string& text, const char* flag) {
  try {
    return LinearMap::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

Rational rational_flag(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string family;
  long d = 2;
  long N = 0;
  long n = 0;
  long side = 0;
  std::optional<std::uint64_t> seed;
  std::string start, step, v0;
  std::vector<std::string> gens;
  std::string out;
};

void cmd_generate(const GenerateArgs& g, Manifest& m) {
  auto need = [&](long v, const char* flag) {
    if (v <= 0) throw UsageError("generate " + g.family + ": " + flag + " is required");
  };
  PointSet set(1);
  std::string desc;
  if (g.family == "AN") {
    need(g.N, "--N");
    set = gen_AN(g.d, g.N);
    desc = "family AN d=" + std::to_string(g.d) + " N=" + std::to_string(g.N);
  } else if (g.family == "BN") {
    need(g.N, "--N");
    set = gen_BN(g.N);
    desc = "family BN N=" + std::to_string(g.N);
  } else if (g.family == "CN") {
    need(g.N, "--N");
    set = gen_CN(g.N);
    desc = "family CN N=" + std::to_string(g.N);
  } else if (g.family == "ap") {
    need(g.n, "--n");
    if (g.start.empty() || g.step.empty()) throw UsageError("generate ap: --start and --step are required");
    set = gen_ap(point_flag(g.start, "--start"), point_flag(g.step, "--step"), g.n);
    desc = "family ap start=" + g.start + " step=" + g.step + " n=" + std::to_string(g.n);
  } else if (g.family == "progression") {
    if (g.v0.empty() || g.gens.empty()) throw UsageError("generate progression: --v0 and at least one --gen are required");
    ProperProgression p{point_flag(g.v0, "--v0"), {}};
    for (const auto& s : g.gens) {
      const auto colon = s.rfind(':');
      if (colon == std::string::npos) throw UsageError("--gen expects VECTOR:LENGTH, got '" + s + "'");
      long len = 0;
      try {
        len = std::stol(s.substr(colon + 1));
      } catch (const std::exception&) {
        throw UsageError("--gen: bad length in '" + s + "'");
      }
      p.generators.emplace_back(point_flag(s.substr(0, colon), "--gen"), len);
    }
    set = gen_proper_progression(p);
    desc = "family progression v0=" + g.v0;
    for (const auto& s : g.gens) desc += " gen=" + s;
  } else if (g.family == "random-box") {
    need(g.side, "--side");
    need(g.n, "--n");
    if (!g.seed) throw UsageError("generate random-box: --seed is required");
    m.set_seed(*g.seed);
    set = gen_random_box(g.d, g.side, static_cast<std::size_t>(g.n), *g.seed);
    desc = "family random-box d=" + std::to_string(g.d) + " side=" + std::to_string(g.side) + " n=" + std::to_string(g.n);
  } else {
    throw UsageError("unknown family " + g.family);
  }
  auto comments = m.comments();
  comments.push_back(desc);
  comments.push_back("size " + std::to_string(set.size()));
  m.emit(g.out, format_point_set(set, comments));
}

// ---------------------------------------------------------------------------
// sumset

struct SumsetArgs {
  std::string op = "sum";
  std::string a, b;
  std::optional<long> q, s;
  std::string map;
  std::vector<std::string> maps;
  std::string out;
};

void cmd_sumset(const SumsetArgs& g, Manifest& m) {
  if (g.a.empty()) throw UsageError("sumset: --a is required");
  const PointSet a = m.load_set(g.a);
  auto b = [&] {
    if (g.b.empty()) throw UsageError("sumset --op " + g.op + ": --b is required");
    return m.load_set(g.b);
  };
  auto map = [&] {
    if (g.map.empty()) throw UsageError("sumset --op " + g.op + ": --map is required");
    return map_flag(g.map, "--map");
  };
  PointSet r(a.dim());
  if (g.op == "sum") {
    r = sumset(a, b());
  } else if (g.op == "diff") {
    r = difference_set(a, b());
  } else if (g.op == "dilate") {
    if (!g.q) throw UsageError("sumset --op dilate: --q is required");
    r = dilate(*g.q, a).set;
  } else if (g.op == "dilate-sum") {
    if (!g.q || !g.s) throw UsageError("sumset --op dilate-sum: --q and --s are required");
    r = dilate_sum(*g.q, *g.s, a);
  } else if (g.op == "apply") {
    r = apply_map(map(), a);
  } else if (g.op == "transform") {
    r = transform_sum(a, map());
  } else if (g.op == "multi") {
    if (g.maps.empty()) throw UsageError("sumset --op multi: at least one --maps is required");
    std::vector<LinearMap> ls;
    for (const auto& s : g.maps) ls.push_back(map_flag(s, "--maps"));
    r = multi_map_sum(a, ls);
  } else {
    throw UsageError("unknown op " + g.op);
  }
  auto comments = m.comments();
  comments.push_back("op " + g.op);
  comments.push_back("size " + std::to_string(r.size()));
  m.emit(g.out, format_point_set(r, comments));
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string inequality;
  std::string a, b, u, v, w;
  std::optional<long> q, s;
  std::string map;
  std::vector<std::string> maps;
  std::string direction;
  std::string c_param;
  std::string c_qs;
  std::string decomp;
  std::string profile;
  std::string dir;
  long random = 0;
  std::optional<std::uint64_t> seed;
  long rand_dim = 2;
  long side = 5;
  long max_size = 20;
  bool summary = false;
  std::string out;
};

const std::vector<std::string> kInequalities{"dilate-main", "transform-main", "ruzsa-triangle", "ruzsa-sum-diff",
                                             "ruzsa-dim",   "trivial-lower",  "gs",             "onedim-dilate",
                                             "lin-product", "doubling-chain", "lines-bound",    "grid-bound",
                                             "bukh"};

/// Operands of one instance, by flag name.
using Operands = std::map<std::string, PointSet>;

std::vector<std::string> operand_names(const std::string& ineq) {
  if (ineq == "ruzsa-triangle") return {"u", "v", "w"};
  if (ineq == "ruzsa-sum-diff") return {"u", "v"};
  if (ineq == "ruzsa-dim" || ineq == "trivial-lower" || ineq == "gs" || ineq == "lin-product") return {"a", "b"};
  return {"a"};
}

BoundReport run_check(const VerifyArgs& g, const Operands& ops, Manifest& m) {
  const std::string& k = g.inequality;
  auto op = [&](const std::string& name) -> const PointSet& { return ops.at(name); };
  auto qs = [&] {
    if (!g.q || !g.s) throw UsageError("verify " + k + ": --q and --s are required");
    return std::pair{*g.q, *g.s};
  };
  auto map = [&] {
    if (g.map.empty()) throw UsageError("verify " + k + ": --map is required");
    return map_flag(g.map, "--map");
  };
  if (k == "dilate-main") {
    const auto [q, s] = qs();
    return check_dilate_main(op("a"), q, s);
  }
  if (k == "transform-main") return check_transform_main(op("a"), map());
  if (k == "ruzsa-triangle") return check_ruzsa_triangle(op("u"), op("v"), op("w"));
  if (k == "ruzsa-sum-diff") return check_ruzsa_sum_diff(op("u"), op("v"));
  if (k == "ruzsa-dim") return check_ruzsa_dim(op("a"), op("b"));
  if (k == "trivial-lower") return check_trivial_lower(op("a"), op("b"));
  if (k == "gs") {
    if (g.direction.empty()) throw UsageError("verify gs: --direction is required");
    return check_gs(op("a"), op("b"), point_flag(g.direction, "--direction"));
  }
  if (k == "onedim-dilate") {
    const auto [q, s] = qs();
    std::optional<Rational> c;
    if (!g.c_param.empty()) c = rational_flag(g.c_param, "--c-param");
    return check_onedim_dilate(op("a"), q, s, c);
  }
  if (k == "lin-product") return check_lin_product(op("a"), op("b"), map());
  if (k == "doubling-chain") return check_doubling_chain(op("a"), map());
  if (k == "lines-bound") {
    const auto [q, s] = qs();
    if (g.c_qs.empty()) throw UsageError("verify lines-bound: --c-qs is required");
    const PointSet& a = op("a");
    LineDecomposition dec = [&] {
      if (!g.decomp.empty()) {
        const std::string text = m.input(g.decomp);
        try {
          return parse_decomposition(text);
        } catch (const ParseError& e) {
          throw std::runtime_error(g.decomp + ": " + e.what());
        }
      }
      Point e1 = Point::Constant(a.dim(), Rational(0));
      e1(0) = Rational(1);
      return fibers_along(a, a.size() >= 2 ? best_direction(a) : Direction::from(e1));
    }();
    return check_lines_bound(a, q, s, dec, rational_flag(g.c_qs, "--c-qs"));
  }
  if (k == "grid-bound") {
    const LinearMap l = map();
    const PointSet& a = op("a");
    if (!g.profile.empty()) {
      const std::string text = m.input(g.profile);
      try {
        return check_grid_bound(a, l, parse_grid_profile(text));
      } catch (const ParseError& e) {
        throw std::runtime_error(g.profile + ": " + e.what());
      }
    }
    if (a.dim() != 2) throw HypothesisError("verify grid-bound: A must lie in the plane");
    if (!has_no_real_eigenvalue(l)) throw HypothesisError("verify grid-bound: map has a real eigenvalue");
    return check_grid_bound(a, l, grid_profile(a, l));
  }
  if (k == "bukh") {
    if (g.maps.empty()) throw UsageError("verify bukh: at least one --maps is required");
    std::vector<LinearMap> ls;
    for (const auto& s : g.maps) ls.push_back(map_flag(s, "--maps"));
    return probe_bukh_conjecture(op("a"), ls);
  }
  throw UsageError("unknown inequality " + k);
}

struct Summary {
  long instances = 0;
  long skipped = 0;
  long violations = 0;
  std::optional<Rational> min, max;
  std::map<mpz_class, long> histogram;

  void add(const BoundReport& r) {
    ++instances;
    if (r.unconditional_violation()) ++violations;
    if (!min || r.slack < *min) min = r.slack;
    if (!max || r.slack > *max) max = r.slack;
    ++histogram[floor(r.slack)];
  }

  std::string json(const std::string& ineq) const {
    nlohmann::ordered_json j;
    j["summary"] = ineq;
    j["instances"] = instances;
    j["skipped"] = skipped;
    j["violations"] = violations;
    j["slack_min"] = min ? min->fraction_str() : "";
    j["slack_max"] = max ? max->fraction_str() : "";
    nlohmann::ordered_json h = nlohmann::ordered_json::array();
    for (const auto& [bucket, count] : histogram) h.push_back({bucket.get_str(), count});
    j["slack_floor_histogram"] = h;
    return j.dump() + "\n";
  }
};

/// Random subset of a segment of the line base + t v.
PointSet random_on_line(CounterRng& rng, Eigen::Index d, long side) {
  Point base(d), v(d);
  for (;;) {
    bool nonzero = false;
    for (Eigen::Index i = 0; i < d; ++i) {
      base(i) = Rational(rng.between(0, side - 1));
      v(i) = Rational(rng.between(-2, 2));
      nonzero = nonzero || !v(i).is_zero();
    }
    if (nonzero) break;
  }
  std::vector<Point> pts{base};
  for (long t = 1; t < side; ++t) {
    if (rng.below(2)) pts.push_back(base + v * Rational(t));
  }
  return PointSet(d, std::move(pts));
}

int cmd_verify(const VerifyArgs& g, Manifest& m) {
  if (std::find(kInequalities.begin(), kInequalities.end(), g.inequality) == kInequalities.end()) {
    throw UsageError("unknown inequality " + g.inequality);
  }
  const auto names = operand_names(g.inequality);
  std::map<std::string, const std::string*> flags{{"a", &g.a}, {"b", &g.b}, {"u", &g.u}, {"v", &g.v}, {"w", &g.w}};
  Operands fixed;
  for (const auto& n : names) {
    if (!flags[n]->empty()) fixed.emplace(n, m.load_set(*flags[n]));
  }

  std::string out;
  Summary summary;
  auto record = [&](const BoundReport& r) {
    out += to_json_line(r) + "\n";
    summary.add(r);
  };
  const bool batch = !g.dir.empty() || g.random > 0;
  auto attempt = [&](const Operands& ops) {
    try {
      record(run_check(g, ops, m));
    } catch (const HypothesisError& e) {
      if (!batch) throw;
      ++summary.skipped;
      std::cerr << "skipped: " << e.what() << "\n";
    } catch (const DimensionError& e) {
      if (!batch) throw;
      ++summary.skipped;
      std::cerr << "skipped: " << e.what() << "\n";
    }
  };

  if (!g.dir.empty() && g.random > 0) throw UsageError("verify: --dir and --random are exclusive");
  if (!g.dir.empty()) {
    if (!fs::is_directory(g.dir)) throw UsageError("verify: " + g.dir + " is not a directory");
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(g.dir)) {
      if (e.is_regular_file()) files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const PointSet inst = m.load_set(f);
      Operands ops = fixed;
      for (const auto& n : names) ops.emplace(n, inst);
      attempt(ops);
    }
  } else if (g.random > 0) {
    if (!g.seed) throw UsageError("verify --random: --seed is required");
    if (g.rand_dim < 1 || g.side < 1 || g.max_size < 1) throw UsageError("verify --random: bad box parameters");
    m.set_seed(*g.seed);
    CounterRng rng(*g.seed);
    long cells = 1;
    for (long i = 0; i < g.rand_dim; ++i) cells *= g.side;
    for (long i = 0; i < g.random; ++i) {
      Operands ops = fixed;
      for (const auto& n : names) {
        if (ops.count(n)) continue;
        if (g.inequality == "lin-product") {
          // Parallel collinear operands: translate one random segment.
          if (n == "a") {
            ops.emplace(n, random_on_line(rng, g.rand_dim, g.side));
          } else {
            const PointSet& a = ops.at("a");
            Point shift(g.rand_dim);
            for (long c = 0; c < g.rand_dim; ++c) shift(c) = Rational(rng.between(-3, 3));
            ops.emplace(n, translate(a, shift));
          }
          continue;
        }
        const auto size = static_cast<std::size_t>(rng.between(1, std::min(g.max_size, cells)));
        ops.emplace(n, gen_random_box(g.rand_dim, g.side, size, rng.next()));
      }
      if (g.inequality == "ruzsa-dim" && ops.at("a").size() < ops.at("b").size()) std::swap(ops.at("a"), ops.at("b"));
      attempt(ops);
    }
  } else {
    for (const auto& n : names) {
      if (!fixed.count(n)) throw UsageError("verify " + g.inequality + ": --" + n + " is required");
    }
    record(run_check(g, fixed, m));
  }
  if (g.summary) out += summary.json(g.inequality);
  m.emit(g.out, out);
  return summary.violations > 0 ? 2 : 0;
}

// ---------------------------------------------------------------------------
// decompose

struct DecomposeArgs {
  std::string input;
  std::string mode = "lines";
  std::string map;
  std::string direction;
  std::string out;
};

void cmd_decompose(const DecomposeArgs& g, Manifest& m) {
  if (g.input.empty()) throw UsageError("decompose: --input is required");
  const PointSet a = m.load_set(g.input);
  if (a.size() < 2) throw UsageError("decompose: input needs at least two points");
  std::string body;
  if (g.mode == "lines") {
    body = format_decomposition(sqrt_cutoff_decompose(a));
  } else if (g.mode == "fibers") {
    const Direction d = g.direction.empty() ? best_direction(a) : Direction::from(point_flag(g.direction, "--direction"));
    body = format_decomposition(fibers_along(a, d));
  } else if (g.mode == "grid") {
    if (g.map.empty()) throw UsageError("decompose --mode grid: --map is required");
    const LinearMap l = map_flag(g.map, "--map");
    if (a.dim() != 2 || l.dim() != 2) throw UsageError("decompose --mode grid: plane inputs only");
    if (!has_no_real_eigenvalue(l)) throw UsageError("decompose --mode grid: map has a real eigenvalue");
    body = format_grid_profile(grid_profile(a, l));
  } else {
    throw UsageError("unknown mode " + g.mode);
  }
  m.emit(g.out, m.comment_block() + body);
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
  long dim = 1;
  long box = 0;
  long n = 0;
  long n_min = 0;
  long n_max = 0;
  std::optional<long> q, s;
  std::string map;
  std::vector<std::string> maps;
  bool full_dim = false;
  std::uint64_t budget = SearchOptions{}.node_budget;
  unsigned threads = 1;
  int split_depth = SearchOptions{}.split_depth;
  std::size_t witness_cap = SearchOptions{}.witness_cap;
  std::string witness_dir;
  std::string out;
};

int cmd_search(const SearchArgs& g, Manifest& m) {
  if (g.box <= 0) throw UsageError("search: --box is required");
  SearchSpec spec;
  spec.dim = g.dim;
  spec.box_side = g.box;
  spec.full_dimensional = g.full_dim;
  const int objectives = (g.q || g.s ? 1 : 0) + (g.map.empty() ? 0 : 1) + (g.maps.empty() ? 0 : 1);
  if (objectives != 1) throw UsageError("search: give exactly one of --q/--s, --map, --maps");
  if (g.q || g.s) {
    if (!g.q || !g.s) throw UsageError("search: --q and --s go together");
    spec.objective = DilateSumObjective{*g.q, *g.s};
  } else if (!g.map.empty()) {
    spec.objective = TransformSumObjective{map_flag(g.map, "--map")};
  } else {
    std::vector<LinearMap> ls;
    for (const auto& s : g.maps) ls.push_back(map_flag(s, "--maps"));
    spec.objective = MultiMapObjective{ls};
  }
  long lo = g.n, hi = g.n;
  if (g.n > 0 && (g.n_min > 0 || g.n_max > 0)) throw UsageError("search: --n excludes --n-min/--n-max");
  if (g.n <= 0) {
    if (g.n_min <= 0 || g.n_max < g.n_min) throw UsageError("search: give --n or a valid --n-min/--n-max range");
    lo = g.n_min;
    hi = g.n_max;
  }
  SearchOptions opts;
  opts.node_budget = g.budget;
  opts.threads = g.threads;
  opts.split_depth = g.split_depth;
  opts.witness_cap = g.witness_cap;
  if (!g.witness_dir.empty()) fs::create_directories(g.witness_dir);

  std::string table;
  std::vector<SlackRow> rows;
  for (long n = lo; n <= hi; ++n) {
    spec.n = n;
    SearchResult r;
    try {
      r = minimize(spec, opts);
    } catch (const BudgetExceeded& e) {
      std::cerr << "error: refused: search space " << e.space_size().get_str() << " exceeds budget " << g.budget << "\n";
      return 1;
    }
    std::cerr << "stats n=" << n << " nodes_explored=" << r.nodes_explored << " runtime_ms=" << r.runtime_ms
              << " threads=" << g.threads << "\n";
    if (!table.empty()) table += "\n";
    table += format_search_result(spec, r);
    const Rational main = main_term(spec);
    rows.push_back({n, r.min_value, main, Rational(static_cast<long>(r.min_value)) - main});
    if (!g.witness_dir.empty()) {
      for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        auto comments = m.comments();
        comments.push_back("objective " + describe(spec.objective));
        comments.push_back("value " + std::to_string(r.min_value));
        const fs::path p = fs::path(g.witness_dir) / ("witness_n" + std::to_string(n) + "_" + std::to_string(i + 1) + ".txt");
        m.emit(p.string(), format_point_set(r.witnesses[i], comments));
      }
    }
  }
  if (hi > lo) {
    table += "\nslack-profile\nn min_value main_term slack\n";
    for (const auto& row : rows) {
      table += std::to_string(row.n) + " " + std::to_string(row.min_value) + " " + row.main_term.str() + " " +
               row.slack.str() + "\n";
    }
  }
  m.emit(g.out, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sumset computations, inequality checks, line structure and extremal search over finite point sets"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  std::string manifest_path;
  app.add_option("--manifest", manifest_path, "Write a JSON run manifest (timing, digests) to this path");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a named point-set family");
  generate->add_option("family", gen.family, "AN | BN | CN | ap | progression | random-box")
      ->required()
      ->check(CLI::IsMember({"AN", "BN", "CN", "ap", "progression", "random-box"}));
  generate->add_option("--d", gen.d, "Dimension (AN, random-box)");
  generate->add_option("--N", gen.N, "Family parameter N");
  generate->add_option("--n", gen.n, "Number of points (ap, random-box)");
  generate->add_option("--side", gen.side, "Box side (random-box)");
  generate->add_option("--seed", gen.seed, "Seed (random-box)");
  generate->add_option("--start", gen.start, "First point, e.g. \"0,0\" (ap)");
  generate->add_option("--step", gen.step, "Step vector (ap)");
  generate->add_option("--v0", gen.v0, "Base point (progression)");
  generate->add_option("--gen", gen.gens, "Generator VECTOR:LENGTH, repeatable (progression)");
  generate->add_option("-o,--out", gen.out, "Output file (default stdout)");

  SumsetArgs sum;
  auto* sumset_cmd = app.add_subcommand("sumset", "Compute a sumset-type set");
  sumset_cmd->add_option("--op", sum.op, "sum | diff | dilate | dilate-sum | apply | transform | multi")
      ->check(CLI::IsMember({"sum", "diff", "dilate", "dilate-sum", "apply", "transform", "multi"}));
  sumset_cmd->add_option("--a", sum.a, "Point-set file A");
  sumset_cmd->add_option("--b", sum.b, "Point-set file B");
  sumset_cmd->add_option("--q", sum.q, "Dilation q");
  sumset_cmd->add_option("--s", sum.s, "Dilation s");
  sumset_cmd->add_option("--map", sum.map, "Matrix \"a/b,c/d;e/f,g/h\"");
  sumset_cmd->add_option("--maps", sum.maps, "Matrix, repeatable (multi)");
  sumset_cmd->add_option("-o,--out", sum.out, "Output file (default stdout)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Evaluate an inequality and print JSON-line reports");
  verify->add_option("inequality", ver.inequality, "Inequality name")->required()->check(CLI::IsMember(kInequalities));
  for (auto [flag, dest] : std::vector<std::pair<const char*, std::string*>>{
           {"--a", &ver.a}, {"--b", &ver.b}, {"--u", &ver.u}, {"--v", &ver.v}, {"--w", &ver.w}}) {
    verify->add_option(flag, *dest, "Point-set file");
  }
  verify->add_option("--q", ver.q, "Dilation q");
  verify->add_option("--s", ver.s, "Dilation s");
  verify->add_option("--map", ver.map, "Matrix \"a/b,c/d;e/f,g/h\"");
  verify->add_option("--maps", ver.maps, "Matrix, repeatable (bukh)");
  verify->add_option("--direction", ver.direction, "Line direction, e.g. \"1,0\" (gs)");
  verify->add_option("--c-param", ver.c_param, "Constant C_{q,s} to test (onedim-dilate)");
  verify->add_option("--c-qs", ver.c_qs, "Stand-in for C_{q,s} in K (lines-bound)");
  verify->add_option("--decomp", ver.decomp, "Line decomposition file (lines-bound)");
  verify->add_option("--profile", ver.profile, "Grid profile file (grid-bound)");
  verify->add_option("--dir", ver.dir, "Batch: one instance per file in this directory");
  verify->add_option("--random", ver.random, "Batch: this many random instances");
  verify->add_option("--seed", ver.seed, "Seed for --random");
  verify->add_option("--rand-dim", ver.rand_dim, "Dimension of random instances");
  verify->add_option("--side", ver.side, "Box side of random instances");
  verify->add_option("--max-size", ver.max_size, "Largest random operand");
  verify->add_flag("--summary", ver.summary, "Append a slack summary line");
  verify->add_option("-o,--out", ver.out, "Output file (default stdout)");

  DecomposeArgs dec;
  auto* decompose = app.add_subcommand("decompose", "Write a line decomposition or grid profile");
  decompose->add_option("--input", dec.input, "Point-set file")->required();
  decompose->add_option("--mode", dec.mode, "lines | grid | fibers")->check(CLI::IsMember({"lines", "grid", "fibers"}));
  decompose->add_option("--map", dec.map, "Matrix (grid)");
  decompose->add_option("--direction", dec.direction, "Direction (fibers; default best direction)");
  decompose->add_option("-o,--out", dec.out, "Output file (default stdout)");

  SearchArgs srch;
  auto* search = app.add_subcommand("search", "Exhaustive minimum over n-subsets of a box");
  search->add_option("--dim", srch.dim, "Dimension");
  search->add_option("--box", srch.box, "Values per axis: box {0..box-1}^dim")->required();
  search->add_option("--n", srch.n, "Set size");
  search->add_option("--n-min", srch.n_min, "Smallest set size of a range");
  search->add_option("--n-max", srch.n_max, "Largest set size of a range");
  search->add_option("--q", srch.q, "Dilation q");
  search->add_option("--s", srch.s, "Dilation s");
  search->add_option("--map", srch.map, "Matrix for A + L(A)");
  search->add_option("--maps", srch.maps, "Matrix, repeatable: L_1(A) + ... + L_k(A)");
  search->add_flag("--full-dim", srch.full_dim, "Only full-dimensional sets");
  search->add_option("--budget", srch.budget, "Largest accepted C(box^dim, n)");
  search->add_option("--threads", srch.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  search->add_option("--split-depth", srch.split_depth, "Task prefix length");
  search->add_option("--witness-cap", srch.witness_cap, "Witnesses kept per n");
  search->add_option("--witness-dir", srch.witness_dir, "Write witness point sets here");
  search->add_option("-o,--out", srch.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  Manifest manifest(argc, argv);
  int code = 0;
  try {
    if (*generate) {
      cmd_generate(gen, manifest);
    } else if (*sumset_cmd) {
      cmd_sumset(sum, manifest);
    } else if (*verify) {
      code = cmd_verify(ver, manifest);
    } else if (*decompose) {
      cmd_decompose(dec, manifest);
    } else if (*search) {
      code = cmd_search(srch, manifest);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!manifest_path.empty()) manifest.write_sidecar(manifest_path);
  return code;
}
