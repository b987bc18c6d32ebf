#include "ballsat/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include <boost/math/distributions/students_t.hpp>

#include "ballsat/ball_search.hpp"
#include "ballsat/error.hpp"
#include "ballsat/rng.hpp"

namespace ballsat {

PlantedInstance gen_planted(unsigned k, std::size_t n, std::size_t m, std::uint64_t seed,
                            std::optional<std::size_t> flips) {
  if (k < 1 || k > n) throw UsageError("gen_planted needs 1 <= k <= n");
  if (flips && *flips > n) throw UsageError("gen_planted: more flips than variables");
  Rng rng(derive_seed(seed, 0));
  auto coin = [&] { return (rng() >> 63) != 0; };

  Assignment planted(n);
  for (Var v = 1; v <= n; ++v) planted.set(v, coin());

  std::vector<Var> vars(n);
  std::iota(vars.begin(), vars.end(), Var{1});
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    // Partial Fisher-Yates for k distinct variables.
    for (unsigned i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(vars[i], vars[pick(rng)]);
    }
    std::vector<Literal> lits;
    for (;;) {
      lits.clear();
      for (unsigned i = 0; i < k; ++i) lits.emplace_back(vars[i], coin());
      if (std::any_of(lits.begin(), lits.end(), [&](Literal l) { return planted.satisfies(l); })) {
        break;
      }
    }
    clauses.emplace_back(std::move(lits));
  }

  Assignment start = planted;
  if (flips) {
    for (std::size_t i = 0; i < *flips; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(vars[i], vars[pick(rng)]);
      start.flip(vars[i]);
    }
  } else {
    for (Var v = 1; v <= n; ++v) {
      if (coin()) start.flip(v);
    }
  }

  PlantedInstance inst{Formula(n, std::move(clauses)), planted, start, 0};
  inst.r = hamming_distance(inst.start, inst.planted);
  if (!evaluate(inst.formula, inst.planted)) {
    throw std::logic_error("planted assignment does not satisfy its formula");
  }
  return inst;
}

const char* to_string(BenchEngine engine) {
  switch (engine) {
    case BenchEngine::kSearchball: return "searchball";
    case BenchEngine::kSearchballFast: return "searchball_fast";
    case BenchEngine::kWalk: return "schoening_walk";
  }
  return "?";
}

std::optional<BenchEngine> parse_bench_engine(std::string_view name) {
  for (auto e : {BenchEngine::kSearchball, BenchEngine::kSearchballFast, BenchEngine::kWalk}) {
    if (name == to_string(e)) return e;
  }
  return std::nullopt;
}

namespace {

long double envelope(long double base, unsigned exponent) {
  return std::pow(base, static_cast<long double>(exponent));
}

}  // namespace

std::vector<BenchRecord> run_scaling(const ScalingConfig& cfg) {
  if (cfg.r_lo > cfg.r_hi) throw UsageError("empty radius range");
  if (cfg.trials < 1) throw UsageError("at least one trial per radius");
  const std::size_t n = cfg.n != 0 ? cfg.n : std::max<std::size_t>(30, 3 * cfg.r_hi);
  if (cfg.r_hi > n) throw UsageError("radius above the number of variables");
  const auto m = static_cast<std::size_t>(std::llround(cfg.density * static_cast<double>(n)));

  const bool want_fast = std::find(cfg.engines.begin(), cfg.engines.end(),
                                   BenchEngine::kSearchballFast) != cfg.engines.end();
  std::optional<FastParams> fp;
  if (want_fast) fp = FastParams::make(cfg.k, cfg.t);

  using Clock = std::chrono::steady_clock;
  std::vector<BenchRecord> records;
  for (unsigned r = cfg.r_lo; r <= cfg.r_hi; ++r) {
    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t inst_seed = derive_seed(cfg.seed, (std::uint64_t{r} << 32) | trial);
      const PlantedInstance inst = gen_planted(cfg.k, n, m, inst_seed, r);
      BallSearcher searcher(inst.formula);
      for (BenchEngine engine : cfg.engines) {
        BenchRecord rec;
        rec.engine = engine;
        rec.k = cfg.k;
        rec.n = n;
        rec.r = r;
        rec.trial = trial;
        const auto start = Clock::now();
        switch (engine) {
          case BenchEngine::kSearchball: {
            const SearchOutcome out = searcher.searchball(inst.start, r);
            rec.leaves = out.stats.leaves;
            rec.nodes = out.stats.total_nodes();
            rec.found = out.found();
            if (static_cast<long double>(rec.leaves) > envelope(cfg.k, r)) {
              throw std::logic_error("searchball leaves exceed k^r");
            }
            break;
          }
          case BenchEngine::kSearchballFast: {
            const SearchOutcome out = searcher.searchball_fast(inst.start, r, *fp);
            rec.t = fp->t;
            rec.code_size = fp->code->size();
            rec.leaves = out.stats.leaves;
            rec.nodes = out.stats.total_nodes();
            rec.found = out.found();
            const unsigned levels = (r + fp->delta() - 1) / fp->delta();
            if (static_cast<long double>(rec.leaves) >
                envelope(static_cast<long double>(fp->code->size()), levels)) {
              throw std::logic_error("searchball_fast leaves exceed |code|^ceil(r/delta)");
            }
            break;
          }
          case BenchEngine::kWalk: {
            std::uint64_t steps = 0;
            const auto params = WalkParams::defaults_for(n, derive_seed(inst_seed, 1));
            rec.found = searcher.walk(inst.start, params, &steps).has_value();
            rec.leaves = 1;
            rec.nodes = steps;
            break;
          }
        }
        rec.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
        if (engine != BenchEngine::kWalk && !rec.found) {
          throw std::logic_error(std::string(to_string(engine)) + " missed a promise instance");
        }
        records.push_back(rec);
      }
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::make_tuple(a.engine, a.r, a.trial) < std::make_tuple(b.engine, b.r, b.trial);
  });
  return records;
}

BaseFit fit_exponential_base(const std::vector<BenchRecord>& records, BenchEngine engine,
                             bool use_total_nodes) {
  std::map<unsigned, std::pair<long double, std::size_t>> by_r;
  for (const BenchRecord& rec : records) {
    if (rec.engine != engine) continue;
    auto& [sum, count] = by_r[rec.r];
    sum += static_cast<long double>(use_total_nodes ? rec.nodes : rec.leaves);
    ++count;
  }
  BaseFit fit;
  fit.points = by_r.size();
  if (fit.points < 2) throw UsageError("fitting a base needs at least two radii");

  std::vector<double> xs, ys;
  for (const auto& [r, acc] : by_r) {
    xs.push_back(r);
    ys.push_back(static_cast<double>(std::log(acc.first / static_cast<long double>(acc.second))));
  }
  const double np = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / np;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / np;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.base = std::exp(fit.slope);
  fit.base_lo = fit.base_hi = fit.base;
  if (fit.points >= 3) {
    const double intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = ys[i] - (intercept + fit.slope * xs[i]);
      sse += e * e;
    }
    const double df = np - 2.0;
    fit.slope_se = std::sqrt(sse / df / sxx);
    const boost::math::students_t dist(df);
    const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
    fit.base_lo = std::exp(fit.slope - q * fit.slope_se);
    fit.base_hi = std::exp(fit.slope + q * fit.slope_se);
  }
  return fit;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "engine,k,n,r,t,code_size,trial,leaves,nodes,wall_time_us,found\n";
  for (const BenchRecord& rec : records) {
    out << to_string(rec.engine) << ',' << rec.k << ',' << rec.n << ',' << rec.r << ',' << rec.t
        << ',' << rec.code_size << ',' << rec.trial << ',' << rec.leaves << ',' << rec.nodes << ','
        << static_cast<std::uint64_t>(std::llround(rec.wall_time_s * 1e6)) << ','
        << (rec.found ? 1 : 0) << '\n';
  }
}

}  // namespace ballsat
