#include "addcomb/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "addcomb/bounds.hpp"
#include "addcomb/generators.hpp"
#include "addcomb/io.hpp"
#include "addcomb/linalg.hpp"

namespace addcomb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

/// The objective as a list of rational maps whose images are summed.
std::vector<LinearMap> objective_maps(const Objective& objective, Eigen::Index dim) {
  return std::visit(overloaded{
                        [&](const DilateSumObjective& o) {
                          return std::vector<LinearMap>{LinearMap::scalar(dim, Rational(o.q)),
                                                        LinearMap::scalar(dim, Rational(o.s))};
                        },
                        [&](const TransformSumObjective& o) {
                          return std::vector<LinearMap>{LinearMap::identity(dim), o.map};
                        },
                        [&](const MultiMapObjective& o) { return o.maps; },
                    },
                    objective);
}

}  // namespace

std::string describe(const Objective& objective) {
  return std::visit(overloaded{
                        [](const DilateSumObjective& o) {
                          return "dilate_sum(" + std::to_string(o.q) + "," + std::to_string(o.s) + ")";
                        },
                        [](const TransformSumObjective& o) { return "transform_sum(" + o.map.str() + ")"; },
                        [](const MultiMapObjective& o) {
                          std::string s = "multi_map(";
                          for (std::size_t i = 0; i < o.maps.size(); ++i) s += (i ? " | " : "") + o.maps[i].str();
                          return s + ")";
                        },
                    },
                    objective);
}

std::int64_t evaluate_objective(const Objective& objective, const PointSet& a) {
  const PointSet image = std::visit(overloaded{
                                        [&](const DilateSumObjective& o) { return dilate_sum(o.q, o.s, a); },
                                        [&](const TransformSumObjective& o) { return transform_sum(a, o.map); },
                                        [&](const MultiMapObjective& o) { return multi_map_sum(a, o.maps); },
                                    },
                                    objective);
  return static_cast<std::int64_t>(image.size());
}

void validate(const SearchSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("search: dim must be >= 1");
  if (spec.box_side < 1) throw std::invalid_argument("search: box side must be >= 1");
  if (spec.n < 1) throw std::invalid_argument("search: n must be >= 1");
  mpz_class cells;
  mpz_ui_pow_ui(cells.get_mpz_t(), static_cast<unsigned long>(spec.box_side), static_cast<unsigned long>(spec.dim));
  if (mpz_class(spec.n) > cells) throw std::invalid_argument("search: n exceeds the number of box points");
  std::visit(overloaded{
                 [&](const DilateSumObjective& o) {
                   if (o.q == 0 || o.s == 0) throw std::invalid_argument("search: q and s must be nonzero");
                   if (std::gcd(std::labs(o.q), std::labs(o.s)) != 1) throw std::invalid_argument("search: q and s must be coprime");
                   if (!(o.q * o.s > 1)) throw std::invalid_argument("search: need qs > 1");
                 },
                 [&](const TransformSumObjective& o) {
                   if (o.map.dim() != spec.dim) throw DimensionError("search: map dimension differs from dim");
                   if (!o.map.invertible()) throw std::invalid_argument("search: map must be invertible");
                 },
                 [&](const MultiMapObjective& o) {
                   if (o.maps.empty()) throw std::invalid_argument("search: need at least one map");
                   for (const auto& m : o.maps) {
                     if (m.dim() != spec.dim) throw DimensionError("search: map dimension differs from dim");
                     if (!m.invertible()) throw std::invalid_argument("search: maps must be invertible");
                   }
                 },
             },
             spec.objective);
  if (spec.full_dimensional && spec.n <= spec.dim) {
    throw InfeasibleSpec("search: a full-dimensional set in dimension " + std::to_string(spec.dim) + " needs more than " +
                         std::to_string(spec.dim) + " points");
  }
  if (spec.full_dimensional && spec.box_side < 2) throw InfeasibleSpec("search: box too small for a full-dimensional set");
}

BudgetExceeded::BudgetExceeded(mpz_class space, std::uint64_t budget)
    : std::runtime_error("search space of " + space.get_str() + " subsets exceeds the budget of " +
                         std::to_string(budget)),
      space_(std::move(space)) {}

mpz_class search_space_size(const SearchSpec& spec) {
  mpz_class cells;
  mpz_ui_pow_ui(cells.get_mpz_t(), static_cast<unsigned long>(spec.box_side), static_cast<unsigned long>(spec.dim));
  mpz_class out;
  mpz_bin_ui(out.get_mpz_t(), cells.get_mpz_t(), static_cast<unsigned long>(spec.n));
  return out;
}

SymmetryGroup SymmetryGroup::of(const Objective& objective, Eigen::Index dim) {
  return {dim, std::holds_alternative<DilateSumObjective>(objective)};
}

std::size_t SymmetryGroup::order() const {
  if (!signed_permutations) return 1;
  std::size_t n = std::size_t{1} << dim;
  for (Eigen::Index i = 2; i <= dim; ++i) n *= static_cast<std::size_t>(i);
  return n;
}

PointSet SymmetryGroup::apply(std::size_t g, const PointSet& a) const {
  if (!signed_permutations || g == 0) return a;
  const std::size_t signs = g & ((std::size_t{1} << dim) - 1);
  std::size_t code = g >> dim;
  // Lehmer decoding of the permutation index.
  std::vector<Eigen::Index> pool(static_cast<std::size_t>(dim));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<Eigen::Index> perm;
  for (Eigen::Index i = dim; i >= 1; --i) {
    std::size_t f = 1;
    for (Eigen::Index j = 2; j < i; ++j) f *= static_cast<std::size_t>(j);
    const std::size_t pick = code / f;
    code %= f;
    perm.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::vector<Point> out;
  out.reserve(a.size());
  for (const Point& p : a) {
    Point q(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      q(i) = p(perm[static_cast<std::size_t>(i)]);
      if (signs >> i & 1) q(i) = -q(i);
    }
    out.push_back(std::move(q));
  }
  return PointSet(dim, std::move(out));
}

PointSet canonicalize(const PointSet& a, const SymmetryGroup& group) {
  if (a.empty()) throw std::invalid_argument("canonicalize: empty set");
  if (a.dim() != group.dim) throw DimensionError("canonicalize: dimension mismatch");
  std::optional<PointSet> best;
  for (std::size_t g = 0; g < group.order(); ++g) {
    PointSet img = group.apply(g, a);
    img = translate(img, -img[0]);
    if (!best || img < *best) best = std::move(img);
  }
  return *best;
}

PointSet canonicalize(const PointSet& a, const Objective& objective) {
  return canonicalize(a, SymmetryGroup::of(objective, a.dim()));
}

namespace {

/// Bitset over a linearized lattice window.
class DenseSet {
 public:
  void reset(std::size_t words) { w_.assign(words, 0); }
  void copy_from(const DenseSet& o) { std::copy(o.w_.begin(), o.w_.end(), w_.begin()); }
  void set(std::int64_t bit) { w_[static_cast<std::size_t>(bit) >> 6] |= std::uint64_t{1} << (bit & 63); }
  /// this |= src << shift, truncated to this set's width.
  void or_shifted(const DenseSet& src, std::int64_t shift) {
    const std::size_t ws = static_cast<std::size_t>(shift) >> 6;
    const unsigned bs = static_cast<unsigned>(shift & 63);
    const std::size_t n = w_.size();
    const std::size_t m = std::min(src.w_.size(), n > ws ? n - ws : 0);
    if (bs == 0) {
      for (std::size_t i = 0; i < m; ++i) w_[i + ws] |= src.w_[i];
      return;
    }
    for (std::size_t i = 0; i < m; ++i) {
      w_[i + ws] |= src.w_[i] << bs;
      if (i + ws + 1 < n) w_[i + ws + 1] |= src.w_[i] >> (64 - bs);
    }
  }
  std::int64_t count() const {
    std::int64_t c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

/// Sorted offsets, for lattices too large for a bitset.
class SparseSet {
 public:
  void reset(std::size_t) { v_.clear(); }
  void copy_from(const SparseSet& o) { v_ = o.v_; }
  void set(std::int64_t x) {
    auto it = std::lower_bound(v_.begin(), v_.end(), x);
    if (it == v_.end() || *it != x) v_.insert(it, x);
  }
  void or_shifted(const SparseSet& src, std::int64_t shift) {
    tmp_.clear();
    tmp_.reserve(v_.size() + src.v_.size());
    auto a = v_.begin();
    auto b = src.v_.begin();
    while (a != v_.end() || b != src.v_.end()) {
      if (b == src.v_.end() || (a != v_.end() && *a < *b + shift)) {
        tmp_.push_back(*a++);
      } else if (a == v_.end() || *b + shift < *a) {
        tmp_.push_back(*b++ + shift);
      } else {
        tmp_.push_back(*a++);
        ++b;
      }
    }
    v_.swap(tmp_);
  }
  std::int64_t count() const { return static_cast<std::int64_t>(v_.size()); }

 private:
  std::vector<std::int64_t> v_;
  std::vector<std::int64_t> tmp_;
};

/// Box points with each objective map's image linearized so that the
/// offset of a sum of images is the sum of offsets.
struct Lattice {
  Eigen::Index dim = 0;
  long side = 0;
  std::size_t points = 0;
  std::size_t maps = 0;
  /// offsets[j][i]: image of box point i under map j.
  std::vector<std::vector<std::int64_t>> offsets;
  /// For each nonempty subset J of maps, the largest offset of a J-sum.
  std::vector<std::int64_t> reach;
  long double bits = 0;

  std::int64_t coord(std::size_t i, Eigen::Index c) const {
    std::size_t q = i;
    for (Eigen::Index t = dim - 1; t > c; --t) q /= static_cast<std::size_t>(side);
    return static_cast<std::int64_t>(q % static_cast<std::size_t>(side));
  }
};

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("search: map entries too large");
  return z.get_si();
}

Lattice build_lattice(const SearchSpec& spec) {
  Lattice lat;
  lat.dim = spec.dim;
  lat.side = spec.box_side;
  lat.points = 1;
  for (Eigen::Index i = 0; i < spec.dim; ++i) lat.points *= static_cast<std::size_t>(spec.box_side);

  const auto maps = objective_maps(spec.objective, spec.dim);
  lat.maps = maps.size();
  mpz_class den = 1;
  for (const auto& m : maps) {
    for (Eigen::Index r = 0; r < spec.dim; ++r) {
      for (Eigen::Index c = 0; c < spec.dim; ++c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(r, c).den().get_mpz_t());
    }
  }
  const Eigen::Index d = spec.dim;
  const std::int64_t top = spec.box_side - 1;
  std::vector<std::vector<std::int64_t>> ints(maps.size(), std::vector<std::int64_t>(static_cast<std::size_t>(d * d)));
  std::vector<std::vector<std::int64_t>> lo(maps.size(), std::vector<std::int64_t>(static_cast<std::size_t>(d)));
  std::vector<std::int64_t> range(static_cast<std::size_t>(d), 1);
  for (std::size_t j = 0; j < maps.size(); ++j) {
    for (Eigen::Index r = 0; r < d; ++r) {
      std::int64_t l = 0, h = 0;
      for (Eigen::Index c = 0; c < d; ++c) {
        const Rational e = maps[j](r, c) * Rational(den);
        const std::int64_t v = to_i64(e.num());
        ints[j][static_cast<std::size_t>(r * d + c)] = v;
        (v < 0 ? l : h) += v * top;
      }
      lo[j][static_cast<std::size_t>(r)] = l;
      range[static_cast<std::size_t>(r)] += h - l;
    }
  }
  std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
  lat.bits = 1;
  for (Eigen::Index r = d - 1; r >= 0; --r) {
    lat.bits *= static_cast<long double>(range[static_cast<std::size_t>(r)]);
    if (r > 0) stride[static_cast<std::size_t>(r - 1)] = stride[static_cast<std::size_t>(r)] * range[static_cast<std::size_t>(r)];
  }
  if (lat.bits > 4.0e18L) throw std::overflow_error("search: sum lattice too large");

  lat.offsets.assign(maps.size(), std::vector<std::int64_t>(lat.points));
  std::vector<std::int64_t> x(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < lat.points; ++i) {
    for (Eigen::Index c = 0; c < d; ++c) x[static_cast<std::size_t>(c)] = lat.coord(i, c);
    for (std::size_t j = 0; j < maps.size(); ++j) {
      std::int64_t off = 0;
      for (Eigen::Index r = 0; r < d; ++r) {
        std::int64_t y = -lo[j][static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < d; ++c) y += ints[j][static_cast<std::size_t>(r * d + c)] * x[static_cast<std::size_t>(c)];
        off += y * stride[static_cast<std::size_t>(r)];
      }
      lat.offsets[j][i] = off;
    }
  }
  const std::size_t subsets = std::size_t{1} << maps.size();
  lat.reach.assign(subsets, 0);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    for (std::size_t j = 0; j < maps.size(); ++j) {
      if (mask >> j & 1) lat.reach[mask] += *std::max_element(lat.offsets[j].begin(), lat.offsets[j].end());
    }
  }
  return lat;
}

struct Shared {
  const SearchSpec* spec;
  const Lattice* lat;
  SymmetryGroup group;
  std::atomic<std::int64_t> incumbent;
  std::atomic<std::uint64_t> nodes{0};
};

struct WorkerResult {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::set<PointSet> minimizers;
};

template <class Rep>
class Worker {
 public:
  explicit Worker(Shared& shared) : sh_(shared), lat_(*shared.lat), n_(static_cast<std::size_t>(shared.spec->n)) {
    const std::size_t subsets = std::size_t{1} << lat_.maps;
    full_ = subsets - 1;
    levels_.resize(n_ + 1);
    for (auto& level : levels_) {
      level.resize(subsets);
      for (std::size_t mask = 1; mask < subsets; ++mask) level[mask].reset(static_cast<std::size_t>(lat_.reach[mask] >> 6) + 1);
    }
    chosen_.resize(n_);
    first_limit_ = lat_.points / static_cast<std::size_t>(lat_.side);
  }

  void run(const std::vector<std::size_t>& prefix) {
    prefix_ = &prefix;
    std::uint64_t before = nodes_;
    dfs(0, 0);
    sh_.nodes.fetch_add(nodes_ - before, std::memory_order_relaxed);
  }

  WorkerResult& result() { return result_; }

 private:
  void push(std::size_t depth, std::size_t idx) {
    auto& cur = levels_[depth];
    auto& next = levels_[depth + 1];
    for (std::size_t mask = 1; mask <= full_; ++mask) {
      next[mask].copy_from(cur[mask]);
      for (std::size_t j = 0; j < lat_.maps; ++j) {
        if (!(mask >> j & 1)) continue;
        const std::size_t rest = mask & ~(std::size_t{1} << j);
        if (rest == 0) {
          next[mask].set(lat_.offsets[j][idx]);
        } else {
          next[mask].or_shifted(next[rest], lat_.offsets[j][idx]);
        }
      }
    }
    chosen_[depth] = idx;
  }

  Eigen::Index affine_rank(std::size_t depth) const {
    if (depth <= 1) return 0;
    const Eigen::Index d = lat_.dim;
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> m(static_cast<Eigen::Index>(depth - 1), d);
    for (std::size_t r = 1; r < depth; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        m(static_cast<Eigen::Index>(r - 1), c) = lat_.coord(chosen_[r], c) - lat_.coord(chosen_[0], c);
      }
    }
    return bareiss_rank(m);
  }

  void dfs(std::size_t depth, std::size_t start) {
    ++nodes_;
    std::int64_t value = 0;
    if (depth > 0) {
      value = levels_[depth][full_].count();
      if (value > sh_.incumbent.load(std::memory_order_relaxed)) return;
    }
    const std::size_t rem = n_ - depth;
    const auto dim = static_cast<std::size_t>(lat_.dim);
    if (sh_.spec->full_dimensional && depth > 0 && rem < dim &&
        static_cast<std::size_t>(affine_rank(depth)) + rem < dim) {
      return;
    }
    if (rem == 0) {
      leaf(value);
      return;
    }
    std::size_t lo = start;
    std::size_t hi = lat_.points - rem;  // inclusive
    if (depth == 0) hi = std::min(hi, first_limit_ - 1);
    if (depth < prefix_->size()) {
      const std::size_t forced = (*prefix_)[depth];
      if (forced < lo || forced > hi) return;
      lo = hi = forced;
    }
    for (std::size_t idx = lo; idx <= hi; ++idx) {
      push(depth, idx);
      dfs(depth + 1, idx + 1);
    }
  }

  void leaf(std::int64_t value) {
    for (Eigen::Index c = 1; c < lat_.dim; ++c) {
      bool touches = false;
      for (std::size_t i = 0; i < n_ && !touches; ++i) touches = lat_.coord(chosen_[i], c) == 0;
      if (!touches) return;
    }
    std::int64_t inc = sh_.incumbent.load(std::memory_order_relaxed);
    while (value < inc && !sh_.incumbent.compare_exchange_weak(inc, value, std::memory_order_relaxed)) {
    }
    if (value > result_.best) return;
    if (value < result_.best) {
      result_.best = value;
      result_.minimizers.clear();
    }
    std::vector<Point> pts;
    pts.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Point p(lat_.dim);
      for (Eigen::Index c = 0; c < lat_.dim; ++c) p(c) = Rational(static_cast<long>(lat_.coord(chosen_[i], c)));
      pts.push_back(std::move(p));
    }
    result_.minimizers.insert(canonicalize(PointSet(lat_.dim, std::move(pts)), sh_.group));
  }

  Shared& sh_;
  const Lattice& lat_;
  std::size_t n_;
  std::size_t full_ = 0;
  std::size_t first_limit_ = 0;
  std::vector<std::vector<Rep>> levels_;
  std::vector<std::size_t> chosen_;
  const std::vector<std::size_t>* prefix_ = nullptr;
  std::uint64_t nodes_ = 0;
  WorkerResult result_;
};

/// Increasing index prefixes of length t; the first index has coordinate 0
/// on the leading axis.
std::vector<std::vector<std::size_t>> make_tasks(const Lattice& lat, std::size_t n, std::size_t t) {
  std::vector<std::vector<std::size_t>> tasks;
  std::vector<std::size_t> cur;
  const std::size_t first_limit = lat.points / static_cast<std::size_t>(lat.side);
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == t) {
      tasks.push_back(cur);
      return;
    }
    const std::size_t rem = n - cur.size();
    std::size_t hi = lat.points - rem;
    if (cur.empty()) hi = std::min(hi, first_limit - 1);
    for (std::size_t i = start; i <= hi; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return tasks;
}

bool fits_constraint(const SearchSpec& spec, const PointSet& a) {
  return !spec.full_dimensional || affine_dim(a) == spec.dim;
}

/// Objective value of structured sets placed in the box, as a starting bound.
std::int64_t structured_incumbent(const SearchSpec& spec) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  const Eigen::Index d = spec.dim;
  auto consider = [&](const PointSet& raw) {
    if (static_cast<long>(raw.size()) != spec.n) return;
    Point lo = raw[0];
    for (const Point& p : raw) {
      for (Eigen::Index c = 0; c < d; ++c) lo(c) = std::min(lo(c), p(c));
    }
    const PointSet a = translate(raw, -lo);
    for (const Point& p : a) {
      for (Eigen::Index c = 0; c < d; ++c) {
        if (p(c) > Rational(spec.box_side - 1)) return;
      }
    }
    if (!fits_constraint(spec, a)) return;
    best = std::min(best, evaluate_objective(spec.objective, a));
  };
  auto embed = [&](const PointSet& a) {
    std::vector<Point> pts;
    for (const Point& p : a) {
      Point q = Point::Constant(d, Rational(0));
      for (Eigen::Index c = 0; c < std::min(d, a.dim()); ++c) q(c) = p(c);
      pts.push_back(std::move(q));
    }
    return PointSet(d, std::move(pts));
  };

  Point e0 = Point::Constant(d, Rational(0));
  e0(0) = Rational(1);
  consider(gen_ap(Point::Constant(d, Rational(0)), e0, spec.n));
  if (spec.n >= d) consider(gen_AN(d, spec.n));
  if (d >= 2) {
    const long k = std::lround(std::sqrt(static_cast<double>(spec.n)));
    if (k >= 1 && k * k == spec.n) consider(embed(gen_BN(k)));
  }
  // The first n box points in index order always fit.
  std::vector<Point> first;
  std::size_t cells = 1;
  for (Eigen::Index c = 0; c < d; ++c) cells *= static_cast<std::size_t>(spec.box_side);
  for (std::size_t i = 0; i < cells && static_cast<long>(first.size()) < spec.n; ++i) {
    Point p(d);
    std::size_t q = i;
    for (Eigen::Index c = d - 1; c >= 0; --c) {
      p(c) = Rational(static_cast<long>(q % static_cast<std::size_t>(spec.box_side)));
      q /= static_cast<std::size_t>(spec.box_side);
    }
    first.push_back(std::move(p));
  }
  consider(PointSet(d, std::move(first)));
  return best;
}

template <class Rep>
std::vector<WorkerResult> run_workers(Shared& shared, const std::vector<std::vector<std::size_t>>& tasks, unsigned threads) {
  std::atomic<std::size_t> next{0};
  std::vector<WorkerResult> results(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto body = [&](unsigned w) {
    try {
      Worker<Rep> worker(shared);
      for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) worker.run(tasks[t]);
      results[w] = std::move(worker.result());
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (threads == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace

SearchResult minimize(const SearchSpec& spec, const SearchOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  validate(spec);
  SearchResult result;
  result.space_size = search_space_size(spec);
  if (result.space_size > mpz_class(std::to_string(options.node_budget))) {
    throw BudgetExceeded(result.space_size, options.node_budget);
  }
  result.witness_cap = options.witness_cap;

  const Lattice lat = build_lattice(spec);
  Shared shared{&spec, &lat, SymmetryGroup::of(spec.objective, spec.dim), {structured_incumbent(spec)}};
  const std::size_t n = static_cast<std::size_t>(spec.n);
  const std::size_t t = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(options.split_depth, 0)));
  const auto tasks = make_tasks(lat, n, t);
  const unsigned threads = std::max(1u, options.threads);

  // Dense windows are cheaper up to a few megabits per set.
  const bool dense = lat.bits <= static_cast<long double>(1u << 22);
  const auto partial = dense ? run_workers<DenseSet>(shared, tasks, threads) : run_workers<SparseSet>(shared, tasks, threads);

  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& p : partial) best = std::min(best, p.best);
  if (best == std::numeric_limits<std::int64_t>::max()) throw InfeasibleSpec("search: no set in the box meets the constraint");
  std::set<PointSet> classes;
  for (const auto& p : partial) {
    if (p.best == best) classes.insert(p.minimizers.begin(), p.minimizers.end());
  }

  result.min_value = best;
  result.canonical_classes = classes.size();
  for (const PointSet& w : classes) {
    if (result.witnesses.size() >= options.witness_cap) break;
    if (evaluate_objective(spec.objective, w) != best || !fits_constraint(spec, w)) {
      throw std::logic_error("search: witness failed re-verification");
    }
    result.witnesses.push_back(w);
  }
  const auto k = static_cast<std::int64_t>(objective_maps(spec.objective, spec.dim).size());
  if (best < k * (spec.n - 1) + 1) throw std::logic_error("search: minimum below the trivial lower bound");
  result.nodes_explored = shared.nodes.load();
  result.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

Rational main_term(const SearchSpec& spec) {
  const Rational n(spec.n);
  return std::visit(overloaded{
                        [&](const DilateSumObjective& o) {
                          return Rational(std::labs(o.q) + std::labs(o.s) + 2 * static_cast<long>(spec.dim) - 2) * n;
                        },
                        [&](const TransformSumObjective&) { return Rational(4) * n; },
                        [&](const MultiMapObjective& o) { return determinant_main_factor(o.maps, spec.dim).lo * n; },
                    },
                    spec.objective);
}

std::vector<SlackRow> slack_profile(SearchSpec spec, long n_min, long n_max, const SearchOptions& options) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("slack_profile: bad n range");
  std::vector<SlackRow> rows;
  for (long n = n_min; n <= n_max; ++n) {
    spec.n = n;
    const auto r = minimize(spec, options);
    const Rational main = main_term(spec);
    rows.push_back({n, r.min_value, main, Rational(static_cast<long>(r.min_value)) - main});
  }
  return rows;
}

std::string format_search_result(const SearchSpec& spec, const SearchResult& result) {
  std::ostringstream os;
  os << "objective " << describe(spec.objective) << "\n"
     << "dim " << spec.dim << "\n"
     << "box " << spec.box_side << "\n"
     << "n " << spec.n << "\n"
     << "constraint " << (spec.full_dimensional ? "full-dimensional" : "none") << "\n"
     << "space " << result.space_size.get_str() << "\n"
     << "min_value " << result.min_value << "\n"
     << "canonical_classes " << result.canonical_classes << "\n"
     << "witnesses " << result.witnesses.size() << " cap " << result.witness_cap << "\n";
  for (std::size_t i = 0; i < result.witnesses.size(); ++i) {
    os << "witness " << i + 1 << ":";
    for (std::size_t j = 0; j < result.witnesses[i].size(); ++j) {
      os << (j ? " ; " : " ") << format_point(result.witnesses[i][j]);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace addcomb
