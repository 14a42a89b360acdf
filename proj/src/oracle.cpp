#include "certmenu/oracle.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <type_traits>

namespace certmenu {

namespace {

Int lcm_int(const Int& a, const Int& b) { return a / boost::multiprecision::gcd(a, b) * b; }

template <typename I>
I from_big(const Int& v) {
  if constexpr (std::is_same_v<I, Int>) {
    return v;
  } else {
    return v.convert_to<I>();
  }
}

template <typename I>
int to_small(const I& v) {
  if constexpr (std::is_same_v<I, Int>) {
    return v.template convert_to<int>();
  } else {
    return static_cast<int>(v);
  }
}

// Scaled-integer view of the grid search.  Masses are integer multiples of
// 1/N; all constraints and the objective are cleared of denominators so the
// inner loops run on plain integer arithmetic.
template <typename I>
struct GridCore {
  int n = 0;
  I N{};
  I D{};                  // common denominator of the 1/e weights
  std::vector<I> w;       // w[i] = D / e_i, 0 for an infinite signal
  I ND{};                 // N * D
  I cap_lhs{};            // b * w[i] * l_den <= a * D * l_num
  I cap_rhs{};
  I score_a{};            // objective scaled by N * D * mu_den
  std::vector<I> score_b;

  struct Best {
    I score{};
    std::vector<int> a;
    std::vector<int> b;
  };

  bool lex_less(const std::vector<int>& a1, const std::vector<int>& b1,
                const std::vector<int>& a2, const std::vector<int>& b2) const {
    if (a1 != a2) return a1 < a2;
    return b1 < b2;
  }

  void search_b(const std::vector<int>& a, const I& mono_a, const std::vector<I>& caps,
                int depth, std::vector<int>& b, I sum_b, I sum_wb, I score, Best& best) const {
    if (depth == n) {
      const I mono_b = D * sum_b - sum_wb;
      if (mono_b < 0 || mono_b > mono_a) return;
      if (score > best.score ||
          (score == best.score && !best.a.empty() && lex_less(a, b, best.a, best.b))) {
        best.score = score;
        best.a = a;
        best.b = b;
      }
      return;
    }
    const I room = N - sum_b;
    I hi = caps[depth] < room ? caps[depth] : room;
    for (I v = 0; v <= hi; ++v) {
      b[depth] = to_small(v);
      I nwb = sum_wb + w[depth] * v;
      if (nwb > ND) break;
      search_b(a, mono_a, caps, depth + 1, b, sum_b + v, nwb, score + score_b[depth] * v, best);
    }
    b[depth] = 0;
  }

  void search_a(int depth, std::vector<int>& a, I sum_a, I sum_wa, int first_lo, int first_hi,
                Best& best) const {
    if (depth == n) {
      std::vector<I> caps(n);
      for (int i = 0; i < n; ++i) {
        if (w[i] == 0) {
          caps[i] = N;
        } else {
          I cap = (I(a[i]) * cap_rhs) / (w[i] * cap_lhs);
          caps[i] = cap < N ? cap : N;
        }
      }
      const I mono_a = D * sum_a - sum_wa;
      std::vector<int> b(n, 0);
      search_b(a, mono_a, caps, 0, b, I(0), I(0), score_a * sum_a, best);
      return;
    }
    const I room = N - sum_a;
    const I lo = depth == 0 ? I(first_lo) : I(0);
    const I hi0 = depth == 0 ? (I(first_hi) < room ? I(first_hi) : room) : room;
    for (I v = lo; v <= hi0; ++v) {
      a[depth] = to_small(v);
      I nwa = sum_wa + w[depth] * v;
      if (nwa > ND) break;
      search_a(depth + 1, a, sum_a + v, nwa, first_lo, first_hi, best);
    }
    a[depth] = 0;
  }

  Best run() const {
    const int nmax = to_small(N);
    unsigned workers = std::min(std::thread::hardware_concurrency(), 4u);
    if (workers < 2 || nmax < 8) {
      Best best;
      best.score = I(0);
      best.a.assign(n, 0);
      best.b.assign(n, 0);
      std::vector<int> a(n, 0);
      search_a(0, a, I(0), I(0), 0, nmax, best);
      return best;
    }
    // Partition on the first coordinate; merge by score then lexicographic
    // (a, b), so the result does not depend on scheduling.
    std::vector<std::future<Best>> futures;
    const int step = (nmax + 1 + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (int lo = 0; lo <= nmax; lo += step) {
      const int hi = std::min(nmax, lo + step - 1);
      futures.push_back(std::async(std::launch::async, [this, lo, hi] {
        Best best;
        best.score = I(-1);
        std::vector<int> a(n, 0);
        search_a(0, a, I(0), I(0), lo, hi, best);
        return best;
      }));
    }
    Best best;
    best.score = I(0);
    best.a.assign(n, 0);
    best.b.assign(n, 0);
    for (auto& f : futures) {
      Best chunk = f.get();
      if (chunk.a.empty()) continue;
      if (chunk.score > best.score ||
          (chunk.score == best.score && lex_less(chunk.a, chunk.b, best.a, best.b))) {
        best = std::move(chunk);
      }
    }
    return best;
  }
};

template <typename I>
GridSearchResult run_grid(const AcceptanceSet& set, const MarketParams& p, int resolution,
                          const Int& d_common) {
  const auto& atoms = set.signals();
  GridCore<I> core;
  core.n = static_cast<int>(atoms.size());
  core.N = I(resolution);
  core.D = from_big<I>(d_common);
  core.ND = core.N * core.D;

  const Int mu_num = boost::multiprecision::numerator(p.mu());
  const Int mu_den = boost::multiprecision::denominator(p.mu());
  const Int l_num = boost::multiprecision::numerator(p.odds());
  const Int l_den = boost::multiprecision::denominator(p.odds());
  core.cap_lhs = from_big<I>(l_den);
  core.cap_rhs = from_big<I>(d_common * l_num);
  core.score_a = from_big<I>(mu_num * d_common);

  for (const Signal& e : atoms) {
    if (e.is_infinite()) {
      core.w.push_back(I(0));
      core.score_b.push_back(from_big<I>(-mu_num * d_common));
      continue;
    }
    const Rat inv = e.inverse_coeff();
    Int wi = d_common * boost::multiprecision::numerator(inv) /
             boost::multiprecision::denominator(inv);
    core.w.push_back(from_big<I>(wi));
    core.score_b.push_back(from_big<I>(wi * mu_den - mu_num * d_common));
  }

  auto best = core.run();

  GridSearchResult result;
  const Rat scale = Rat(1, resolution);
  for (int i = 0; i < core.n; ++i) {
    result.x.push_back(Rat(best.a[i]) * scale);
    result.y.push_back(Rat(best.b[i]) * scale);
  }
  Rat objective(0);
  for (int i = 0; i < core.n; ++i) {
    objective += p.mu() * result.x[i];
    objective += (atoms[i].inverse_coeff() - p.mu()) * result.y[i];
  }
  result.objective = std::move(objective);
  return result;
}

}  // namespace

GridSearchResult grid_search_menus(const AcceptanceSet& set, const MarketParams& p,
                                   const GridSpec& spec) {
  if (set.empty() || set.size() > 3) {
    throw std::invalid_argument("grid search handles 1 to 3 accepted signals");
  }
  if (spec.resolution < 8) throw std::invalid_argument("grid resolution must be at least 8");

  Int d_common(1);
  for (const Signal& e : set.signals()) {
    if (e.is_infinite()) continue;
    d_common = lcm_int(d_common, boost::multiprecision::denominator(e.inverse_coeff()));
  }

  // Conservative magnitude bound for the scaled-integer terms; fall back to
  // big integers when 64-bit arithmetic could overflow.
  const Int mu_den = boost::multiprecision::denominator(p.mu());
  const Int mu_num = boost::multiprecision::numerator(p.mu());
  const Int l_num = boost::multiprecision::numerator(p.odds());
  const Int l_den = boost::multiprecision::denominator(p.odds());
  Int wmax(0);
  for (const Signal& e : set.signals()) {
    if (e.is_infinite()) continue;
    const Rat inv = e.inverse_coeff();
    wmax = std::max(wmax, d_common * boost::multiprecision::numerator(inv) /
                              boost::multiprecision::denominator(inv));
  }
  Int bound = Int(spec.resolution) * d_common;
  bound = std::max(bound, Int(spec.resolution) * wmax * l_den);
  bound = std::max(bound, Int(spec.resolution) * d_common * l_num);
  bound = std::max(bound, Int(3 * spec.resolution) * (wmax * mu_den + mu_num * d_common));
  if (bound < Int("2305843009213693952")) {  // 2^61
    return run_grid<long long>(set, p, spec.resolution, d_common);
  }
  return run_grid<Int>(set, p, spec.resolution, d_common);
}

std::vector<LpSolution> enumerate_feasible_vertices(const LpInstance& lp) {
  if (lp.atom_count() > 6) {
    throw std::invalid_argument("vertex enumeration handles at most six accepted signals");
  }
  const std::size_t d = lp.variable_count();
  const std::size_t m = lp.rows.size();

  std::set<std::vector<Rat>> seen;
  std::vector<LpSolution> out;

  auto feasible = [&](const std::vector<Rat>& v) {
    for (const Rat& value : v) {
      if (value < 0) return false;
    }
    for (const auto& row : lp.rows) {
      Rat lhs(0);
      for (std::size_t j = 0; j < d; ++j) lhs += row.coeffs[j] * v[j];
      if (lhs > row.rhs) return false;
    }
    return true;
  };

  auto record = [&](std::vector<Rat> v) {
    if (!feasible(v)) return;
    if (!seen.insert(v).second) return;
    Rat objective(0);
    for (std::size_t j = 0; j < d; ++j) objective += lp.objective[j] * v[j];
    LpSolution sol;
    sol.x.assign(v.begin(), v.begin() + lp.atom_count());
    sol.y.assign(v.begin() + lp.atom_count(), v.end());
    sol.objective = std::move(objective);
    out.push_back(std::move(sol));
  };

  // A basic solution makes d constraints tight: some variables pinned to
  // zero, the rest determined by tight structural rows.  Solve the reduced
  // square system for every such choice.
  std::vector<std::size_t> zeros, rows_pick;
  auto solve_reduced = [&](const std::vector<std::size_t>& fixed,
                           const std::vector<std::size_t>& tight_rows) {
    std::vector<std::size_t> free_vars;
    std::vector<bool> is_fixed(d, false);
    for (std::size_t j : fixed) is_fixed[j] = true;
    for (std::size_t j = 0; j < d; ++j) {
      if (!is_fixed[j]) free_vars.push_back(j);
    }
    const std::size_t k = free_vars.size();
    if (tight_rows.size() != k) return;

    // Gaussian elimination on the k x k system.
    std::vector<std::vector<Rat>> a(k, std::vector<Rat>(k + 1, Rat(0)));
    for (std::size_t r = 0; r < k; ++r) {
      const auto& row = lp.rows[tight_rows[r]];
      for (std::size_t c = 0; c < k; ++c) a[r][c] = row.coeffs[free_vars[c]];
      a[r][k] = row.rhs;
    }
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t pivot = col;
      while (pivot < k && a[pivot][col] == 0) ++pivot;
      if (pivot == k) return;  // singular
      std::swap(a[col], a[pivot]);
      const Rat lead = a[col][col];
      for (auto& cell : a[col]) cell /= lead;
      for (std::size_t r = 0; r < k; ++r) {
        if (r == col || a[r][col] == 0) continue;
        const Rat factor = a[r][col];
        for (std::size_t c = col; c <= k; ++c) a[r][c] -= factor * a[col][c];
      }
    }
    std::vector<Rat> v(d, Rat(0));
    for (std::size_t c = 0; c < k; ++c) v[free_vars[c]] = a[c][k];
    record(std::move(v));
  };

  // Enumerate subsets in lexicographic order for a deterministic listing.
  auto combinations = [](std::size_t total, std::size_t want, auto&& visit) {
    std::vector<std::size_t> pick(want);
    auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
      if (depth == want) {
        visit(pick);
        return;
      }
      for (std::size_t i = start; i + (want - depth) <= total; ++i) {
        pick[depth] = i;
        self(self, i + 1, depth + 1);
      }
    };
    rec(rec, 0, 0);
  };

  for (std::size_t zero_count = 0; zero_count <= d; ++zero_count) {
    const std::size_t need_rows = d - zero_count;
    if (need_rows > m) continue;
    combinations(d, zero_count, [&](const std::vector<std::size_t>& fixed) {
      combinations(m, need_rows, [&](const std::vector<std::size_t>& tight) {
        solve_reduced(fixed, tight);
      });
    });
  }
  return out;
}

LpSolution vertex_enumerate(const LpInstance& lp) {
  std::vector<LpSolution> vertices = enumerate_feasible_vertices(lp);
  if (vertices.empty()) throw std::logic_error("no basic feasible solution found");
  const LpSolution* best = &vertices.front();
  for (const LpSolution& v : vertices) {
    if (v.objective > best->objective) best = &v;
  }
  return *best;
}

RandomInstance random_instance(std::uint64_t seed, const std::pair<Rat, Rat>& bounds) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::uint64_t k) { return rng() % k; };

  // Prior/threshold pool; every pair is pessimistic and keeps l(mu) simple
  // enough that optimal vertices land near coarse mass grids.
  static const std::array<std::pair<Rat, Rat>, 16> pool = {{
      {Rat(1, 4), Rat(1, 2)},
      {Rat(1, 3), Rat(1, 2)},
      {Rat(1, 2), Rat(2, 3)},
      {Rat(1, 4), Rat(1, 3)},
      {Rat(1, 6), Rat(1, 2)},
      {Rat(2, 5), Rat(1, 2)},
      {Rat(1, 2), Rat(4, 5)},
      {Rat(1, 3), Rat(2, 3)},
      {Rat(1, 2), Rat(3, 4)},
      {Rat(1, 4), Rat(2, 5)},
      {Rat(3, 5), Rat(3, 4)},
      {Rat(1, 5), Rat(1, 2)},
      {Rat(1, 2), Rat(5, 6)},
      {Rat(2, 3), Rat(3, 4)},
      {Rat(1, 10), Rat(1, 2)},
      {Rat(3, 4), Rat(4, 5)},
  }};
  const auto& [mu, pi_star] = pool[pick(pool.size())];

  const std::size_t count = 1 + pick(3);
  static const std::array<int, 5> denominators = {1, 2, 3, 4, 6};
  std::set<Rat> values;
  while (values.size() < count) {
    const int den = denominators[pick(denominators.size())];
    // Numerators spanning [den*min, den*max]; resample on 0, 1, duplicates.
    const Rat scaled_lo = bounds.first * den;
    const Rat scaled_hi = bounds.second * den;
    const Int lo_i = boost::multiprecision::numerator(scaled_lo) /
                     boost::multiprecision::denominator(scaled_lo);
    const Int hi_i = boost::multiprecision::numerator(scaled_hi) /
                     boost::multiprecision::denominator(scaled_hi);
    const std::uint64_t lo = lo_i.convert_to<std::uint64_t>();
    const std::uint64_t hi = hi_i.convert_to<std::uint64_t>();
    const std::uint64_t num = lo + pick(hi - lo + 1);
    Rat value{static_cast<long long>(num), static_cast<long long>(den)};
    if (value < bounds.first || value > bounds.second) continue;
    if (value == 1 || value == 0) continue;
    values.insert(std::move(value));
  }
  std::vector<Signal> signals;
  for (const Rat& v : values) signals.push_back(Signal(v));

  ReceiverUtilities utilities{Rat(1) - pi_star, Rat(0), pi_star, Rat(0)};
  return RandomInstance{AcceptanceSet(std::move(signals)),
                        MarketParams::from_utilities(mu, utilities)};
}

}  // namespace certmenu
