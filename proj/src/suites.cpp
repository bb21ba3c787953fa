#include "jamesop/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "jamesop/blocks.hpp"
#include "jamesop/james.hpp"
#include "jamesop/lifted.hpp"
#include "jamesop/regular.hpp"
#include "jamesop/serialize.hpp"

namespace jamesop {

void RunConfig::validate() const {
  require(norm_tol > 0.0 && solver_tol > 0.0 && cert_tol > 0.0, "tolerances must be positive");
  if (oracle_cap < 1 || oracle_cap > Limits::kMaxOracleCap)
    fail(ErrorCode::kCapExceeded, "oracle cap outside 1.." + std::to_string(Limits::kMaxOracleCap));
  if (walsh_cap < 1 || walsh_cap > Limits::kMaxWalshCap)
    fail(ErrorCode::kCapExceeded, "walsh cap outside 1.." + std::to_string(Limits::kMaxWalshCap));
}

bool SuiteReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

// Per-criterion stream so that running a criterion alone or inside a suite
// draws the same numbers.
Rng stream(const RunConfig& c, int id) { return Rng(c.seed * 1000003ULL + static_cast<std::uint64_t>(id)); }

double gauss(Rng& rng) { return std::normal_distribution<double>()(rng); }

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Matrix random_matrix(Rng& rng, std::size_t n) {
  Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = gauss(rng);
  return a;
}

std::vector<double> random_coeffs(Rng& rng, std::size_t m) {
  std::vector<double> c(m);
  for (double& v : c) v = gauss(rng);
  return c;
}

// Collects assertions; a criterion passes iff all of them do.
struct Judge {
  CriterionResult r;

  void at_most(const std::string& what, double value, double limit, double tol = 0.0) {
    r.assertions.push_back({what + " <= bound", value, limit, tol, value <= limit});
  }
  void at_least(const std::string& what, double value, double limit, double tol = 0.0) {
    r.assertions.push_back({what + " >= bound", value, limit, tol, value >= limit});
  }
  void holds(const std::string& what, bool ok, double value = 0.0) {
    r.assertions.push_back({what, value, 0.0, 0.0, ok});
  }
};

// Dyadic data keeps every sum and square exact in double precision, so the
// oracle comparisons below can demand exact equality.
double dyadic(Rng& rng, int range, double scale) {
  return static_cast<double>(std::uniform_int_distribution<int>(-range, range)(rng)) * scale;
}

ConvexBlockSystem dyadic_blocks(Rng& rng, const std::vector<std::size_t>& boundaries) {
  ConvexBlockSystem b;
  b.boundaries = boundaries;
  for (std::size_t k = 0; k + 1 < boundaries.size(); ++k) {
    const std::size_t w = boundaries[k + 1] - boundaries[k];
    std::vector<int> parts(w, 0);
    for (int unit = 0; unit < 16; ++unit) ++parts[uniform(rng, 0, w - 1)];
    for (int q : parts) b.weights.push_back(q / 16.0);
  }
  b.validate();
  return b;
}

ConvexBlockSystem real_blocks(Rng& rng, std::size_t extent_max) {
  const std::size_t start = uniform(rng, 1, 3);
  std::vector<std::size_t> bd{start};
  while (true) {
    const std::size_t next = bd.back() + uniform(rng, 1, 4);
    if (next - 1 > extent_max) break;
    bd.push_back(next);
  }
  if (bd.size() < 2) bd.push_back(start + 1);
  ConvexBlockSystem b;
  b.boundaries = bd;
  for (std::size_t k = 0; k + 1 < bd.size(); ++k) {
    std::vector<double> w(bd[k + 1] - bd[k]);
    double s = 0.0;
    for (double& v : w) s += (v = std::uniform_real_distribution<double>(0.05, 1.0)(rng));
    for (double& v : w) v /= s;
    // Put the rounding residue on one weight so that each block sums to 1.
    double t = 0.0;
    for (std::size_t i = 1; i < w.size(); ++i) t += w[i];
    w[0] = 1.0 - t;
    b.weights.insert(b.weights.end(), w.begin(), w.end());
  }
  b.validate();
  return b;
}

// Every boundary set inside 1..extent_max + 1 with at least one block.
std::vector<std::vector<std::size_t>> all_boundaries(std::size_t extent_max) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t top = extent_max + 1;
  for (std::size_t mask = 0; mask < (1u << top); ++mask) {
    std::vector<std::size_t> bd;
    for (std::size_t i = 0; i < top; ++i)
      if (mask & (1u << i)) bd.push_back(i + 1);
    if (bd.size() >= 2) out.push_back(std::move(bd));
  }
  return out;
}

// ---------------------------------------------------------------------------

CriterionResult walsh_ratio_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "Walsh ratio ||A_n||_r / ||A_n|| = 2^{n/2}, n = 1..8";
  j.r.time_limit = 5.0;
  const int cap = std::max<int>(static_cast<int>(cfg.walsh_cap), 8);
  for (int n = 1; n <= 8; ++n) {
    const WalshNorms w = walsh_norms(n, cfg.norm_tol, cap);
    j.at_most("n=" + std::to_string(n) + " relative error (exact Gram)", w.residual, 1e-9, 1e-9);
    const double it = std::abs(w.ratio_iterative - w.expected) / w.expected;
    j.at_most("n=" + std::to_string(n) + " relative error (iterative)", it, 1e-9, 1e-9);
  }
  return j.r;
}

CriterionResult oracle_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "DP norm equals exhaustive oracle; e/f agreement";
  j.r.time_limit = 30.0;
  Rng rng = stream(cfg, 2);
  const double ps[] = {1.5, 2.0, 3.0};
  std::size_t mismatches = 0;
  double worst_basis = 0.0;
  const std::size_t m_max = std::min<std::size_t>(12, cfg.oracle_cap);
  for (int t = 0; t < 600; ++t) {
    const double p = ps[t % 3];
    const std::size_t m = uniform(rng, 1, m_max);
    const Basis basis = t % 2 ? Basis::kE : Basis::kF;
    JamesVector v(basis, random_coeffs(rng, m), p, 1);
    if (t % 7 == 0) v.coeffs[uniform(rng, 0, m - 1)] = 0.0;
    const NormResult dp = james_norm(v);
    const NormResult oracle = james_norm_oracle(v, cfg.oracle_cap);
    if (dp.value != oracle.value || dp.chain != oracle.chain) ++mismatches;
    const double other = james_norm(convert_basis(v)).value;
    worst_basis = std::max(worst_basis, std::abs(other - dp.value) / std::max(1.0, dp.value));
  }
  j.at_most("DP/oracle mismatches over 600 vectors", static_cast<double>(mismatches), 0.0);
  j.at_most("max relative e/f disagreement", worst_basis, 1e-12, 1e-12);
  return j.r;
}

CriterionResult isometry_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "Convex block isometry";
  j.r.time_limit = 60.0;
  Rng rng = stream(cfg, 3);
  double worst_oracle = 0.0;
  std::size_t systems = 0;
  for (const auto& bd : all_boundaries(8)) {
    const ConvexBlockSystem b = dyadic_blocks(rng, bd);
    std::vector<double> coef(b.blocks());
    for (double& c : coef) c = dyadic(rng, 8, 0.25);
    worst_oracle = std::max(worst_oracle, verify_block_isometry(b, coef, true));
    ++systems;
  }
  j.at_most("oracle residual over " + std::to_string(systems) + " systems with m <= 8", worst_oracle, 0.0);
  double worst_dp = 0.0;
  for (int t = 0; t < 200; ++t) {
    const ConvexBlockSystem b = real_blocks(rng, 12);
    worst_dp = std::max(worst_dp, verify_block_isometry(b, random_coeffs(rng, b.blocks()), false));
  }
  j.at_most("DP residual over 200 random systems with m <= 12", worst_dp, 1e-9, 1e-9);
  return j.r;
}

CriterionResult alteration_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "Cut alteration never decreases the functional";
  j.r.time_limit = 60.0;
  Rng rng = stream(cfg, 4);
  std::size_t decreases = 0, misplaced = 0, sequences = 0;
  for (const auto& bd : all_boundaries(8)) {
    const ConvexBlockSystem b = dyadic_blocks(rng, bd);
    std::vector<double> coef(b.blocks());
    for (double& c : coef) c = dyadic(rng, 8, 0.25);
    const JamesVector d = expand_blocks(b, coef);
    const std::size_t lo = bd.front(), hi = bd.back(), span = hi - lo + 1;
    for (std::size_t mask = 1; mask < (1u << span); ++mask) {
      CutSequence cuts;
      for (std::size_t i = 0; i < span; ++i)
        if (mask & (1u << i)) cuts.push_back(lo + i);
      if (cuts.size() < 2) continue;
      const CutSequence out = alter_cuts(b, coef, cuts);
      ++sequences;
      if (cut_functional(d, out) < cut_functional(d, cuts)) ++decreases;
      for (std::size_t c : out)
        if (!std::binary_search(bd.begin(), bd.end(), c)) {
          ++misplaced;
          break;
        }
    }
  }
  j.at_most("decreases over " + std::to_string(sequences) + " cut sequences", static_cast<double>(decreases), 0.0);
  j.at_most("outputs with a cut off the boundaries", static_cast<double>(misplaced), 0.0);
  return j.r;
}

CriterionResult projection_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "Basis projections have norm one";
  Rng rng = stream(cfg, 5);
  double worst_head = -1e300, worst_tail = -1e300;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = uniform(rng, 1, 30);
    const JamesVector v = JamesVector::in_f(random_coeffs(rng, m));
    const std::size_t n = uniform(rng, 0, m + 1);
    const double nv = james_norm_value(v);
    const double head = james_norm_value(apply_projection({n, ProjectionSide::kHead}, v));
    const double tail = james_norm_value(apply_projection({n, ProjectionSide::kTail}, v));
    worst_head = std::max(worst_head, head - nv);
    worst_tail = std::max(worst_tail, tail - nv);
  }
  j.at_most("max ||P_n v|| - ||v|| over 1000 vectors", worst_head, 1e-12, 1e-12);
  j.at_most("max ||(I-P_n) v|| - ||v|| over 1000 vectors", worst_tail, 1e-12, 1e-12);
  // Equality witnesses: vectors already in the range of each projection.
  double gap_head = 0.0, gap_tail = 0.0;
  for (std::size_t n = 1; n <= 20; ++n) {
    std::vector<double> c = random_coeffs(rng, n + 5);
    std::vector<double> h = c, tl = c;
    std::fill(h.begin() + static_cast<long>(n), h.end(), 0.0);
    std::fill(tl.begin(), tl.begin() + static_cast<long>(n), 0.0);
    const JamesVector vh = JamesVector::in_f(h), vt = JamesVector::in_f(tl);
    gap_head = std::max(gap_head, std::abs(james_norm_value(apply_projection({n, ProjectionSide::kHead}, vh)) -
                                           james_norm_value(vh)));
    gap_tail = std::max(gap_tail, std::abs(james_norm_value(apply_projection({n, ProjectionSide::kTail}, vt)) -
                                           james_norm_value(vt)));
  }
  j.at_most("equality witness gap for P_n, n = 1..20", gap_head, 1e-12, 1e-12);
  j.at_most("equality witness gap for I-P_n, n = 1..20", gap_tail, 1e-12, 1e-12);
  return j.r;
}

CriterionResult tilde_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "Diagonal witness attains ||S||_r and nothing exceeds it";
  j.r.time_limit = 120.0;
  Rng rng = stream(cfg, 6);
  double worst_witness = 0.0, worst_excess = -1e300;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 1, 5);
    const Matrix s = random_matrix(rng, n);
    const TildeResult tr = tilde_norm(s, cfg.norm_tol);
    const double r = regular_norm(s, cfg.norm_tol);
    worst_witness = std::max(worst_witness, std::abs(tr.witness_value - r));
    // Hill climbing from a random point and from the witness.
    for (int start = 0; start < 2; ++start) {
      Matrix x = start == 0 ? random_matrix(rng, n) : tr.witness;
      double best = tilde_evaluate(s, x);
      double step = 0.5;
      for (int it = 0; it < 400; ++it) {
        Matrix y = x;
        y(static_cast<Eigen::Index>(uniform(rng, 0, n - 1)), static_cast<Eigen::Index>(uniform(rng, 0, n - 1))) +=
            step * gauss(rng);
        if (y.isZero(0.0)) continue;
        const double v = tilde_evaluate(s, y);
        if (v > best) {
          best = v;
          x = y;
        } else if (it % 40 == 39) {
          step *= 0.5;
        }
      }
      worst_excess = std::max(worst_excess, best - r);
    }
  }
  j.at_most("max |witness value - ||S||_r| over 100 matrices", worst_witness, 1e-9, 1e-9);
  j.at_most("max ascent value - ||S||_r", worst_excess, 1e-9, 1e-9);
  return j.r;
}

CriterionResult lift_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "Lift bound and quotient round trip";
  Rng rng = stream(cfg, 7);
  double worst_excess = -1e300;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = uniform(rng, 1, 5);
    const Matrix a = random_matrix(rng, n);
    SquareSumVector x;
    for (std::size_t i = 0; i < n; ++i) x.components.push_back(JamesVector::in_f(random_coeffs(rng, uniform(rng, 1, 10))));
    const double lhs = lift_apply(a, x).norm();
    worst_excess = std::max(worst_excess, lhs - regular_norm(a, cfg.norm_tol) * x.norm());
  }
  j.at_most("max ||A^ x|| - ||A||_r ||x|| over 500 cases", worst_excess, 1e-9, 1e-9);
  std::size_t inexact = 0;
  double worst_product = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 1, 5);
    const Matrix a = random_matrix(rng, n), b = random_matrix(rng, n);
    if (quotient_action(OperatorMatrix::lift(a)) != a) ++inexact;
    const Matrix ab = quotient_action(std::vector<OperatorMatrix>{OperatorMatrix::lift(a), OperatorMatrix::lift(b)});
    worst_product = std::max(worst_product, (ab - a * b).cwiseAbs().maxCoeff());
  }
  j.at_most("round trips with quotient_action(lift(A)) != A", static_cast<double>(inexact), 0.0);
  j.at_most("max |quotient_action(A^ B^) - AB| over 100 pairs", worst_product, 1e-12, 1e-12);
  return j.r;
}

// Rank-one entries with zero tail, supported in f_1..f_5.
OperatorMatrix rank_one_perturbation(std::size_t n) {
  std::vector<std::vector<std::optional<FiniteOperatorOnJ>>> w(n, std::vector<std::optional<FiniteOperatorOnJ>>(n));
  w[0][0] = FiniteOperatorOnJ::rank_one({1.0, 2.0, -1.0, 0.5, 0.0}, 1, 5);
  w[n - 1][0] = FiniteOperatorOnJ::rank_one({0.5, -1.0, 0.0, 1.5, 0.0}, 3, 5);
  if (n > 2) w[2][1] = FiniteOperatorOnJ::rank_one({-0.25, 0.75, 1.0, 0.0}, 2, 5);
  return OperatorMatrix::compact_only(std::move(w));
}

CriterionResult certificate_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "Certified lower bound (1+delta)^{-2} ||S||_r - delta, delta = 0.1";
  j.r.time_limit = 600.0;
  Rng rng = stream(cfg, 8);
  const double delta = 0.1;
  struct Case {
    std::string name;
    Matrix s;
  };
  std::vector<Case> cases{{"identity2", Matrix::Identity(2, 2)},
                          {"A_1", walsh_matrix(1)},
                          {"random2x2", random_matrix(rng, 2)},
                          {"random3x3", random_matrix(rng, 3)}};
  std::ostringstream note;
  double slowest = 0.0;
  for (const Case& c : cases) {
    for (int with_w = 0; with_w < 2; ++with_w) {
      const std::size_t n = static_cast<std::size_t>(c.s.rows());
      const OperatorMatrix w = with_w ? rank_one_perturbation(n) : OperatorMatrix::lift(Matrix::Zero(c.s.rows(), c.s.rows()));
      const std::string label = c.name + (with_w ? " W=rank-one" : " W=0");
      CertifyOptions opts;
      opts.seed = cfg.seed;
      opts.norm_tol = cfg.norm_tol;
      const auto t0 = Clock::now();
      const WitnessCertificate cert = certify_lower_bound(c.s, w, delta, opts);
      const CertificateCheck check = verify_certificate(cert, cfg.cert_tol);
      slowest = std::max(slowest, std::chrono::duration<double>(Clock::now() - t0).count());
      j.at_least(label + " re-evaluated bound", check.recomputed, cert.target);
      j.holds(label + " certificate re-verifies within cert_tol", check.ok, check.recomputed);
      note << label << ": m=" << cert.m << " l=" << cert.l << "; ";
    }
  }
  j.at_most("slowest case seconds", slowest, 600.0);
  j.r.note = note.str();
  return j.r;
}

CriterionResult degradation_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "Walsh degradation: certified ||A_n^|| / ||quotient_action(A_n^)||, n = 1..6";
  const double delta = 0.1;
  double previous = -1e300;
  bool increasing = true;
  std::ostringstream note;
  for (int n = 1; n <= 6; ++n) {
    const Matrix a = walsh_matrix(n, std::max<int>(static_cast<int>(cfg.walsh_cap), 6));
    const auto size = a.rows();
    CertifyOptions opts;
    opts.seed = cfg.seed;
    opts.norm_tol = cfg.norm_tol;
    opts.m_ladder = {8, 16, 32, 64};
    opts.ascent_restarts = 2;
    const WitnessCertificate cert = certify_lower_bound(a, OperatorMatrix::lift(Matrix::Zero(size, size)), delta, opts);
    const double quotient = spectral_norm(quotient_action(OperatorMatrix::lift(a)), cfg.norm_tol);
    const double ratio = cert.reported_bound / quotient;
    const double threshold = std::pow(2.0, n / 2.0) / ((1.0 + delta) * (1.0 + delta)) - delta;
    j.at_least("n=" + std::to_string(n) + " certified ratio", ratio, threshold);
    increasing = increasing && ratio > previous;
    previous = ratio;
    note << "n=" << n << ": m=" << cert.m << " achieved " << cert.achieved_constant << " of ||A_n||_r; ";
  }
  j.holds("ratio strictly increasing in n", increasing);
  j.r.note = note.str();
  return j.r;
}

CriterionResult quotient_criterion(const RunConfig& cfg) {
  Judge j;
  j.r.title = "Quotient isometry under the stabilized-tail rule";
  j.r.time_limit = 120.0;
  Rng rng = stream(cfg, 10);
  SolverOptions so;
  so.tol = cfg.solver_tol;
  bool converged = true;
  for (std::size_t m : {40, 60}) {
    BidualSquareSumVector x{{BidualVector{JamesVector(Basis::kE, {}), 1.0}}};
    const QuotientCheck q = quotient_isometry_check(x, m, so);
    converged = converged && q.converged;
    j.at_least("truncation " + std::to_string(m) + " distance (body 0, tail 1)", q.distance, 0.999);
    j.at_most("truncation " + std::to_string(m) + " distance (body 0, tail 1)", q.distance, 1.001);
  }
  {
    BidualSquareSumVector x;
    for (double t : {3.0, 4.0}) {
      std::vector<double> body(uniform(rng, 1, 10));
      for (double& b : body) b = gauss(rng);
      x.components.push_back({JamesVector(Basis::kE, std::move(body)), t});
    }
    const QuotientCheck q = quotient_isometry_check(x, 40, so);
    converged = converged && q.converged;
    j.at_most("|distance - 5| for tails (3, 4)", std::abs(q.distance - 5.0), 1e-2, 1e-2);
  }
  j.holds("solver brackets closed", converged);
  j.r.note =
      "a failure here indicts the stabilized-tail convention for norms of bidual elements, "
      "not the quotient isometry itself";
  return j.r;
}

CriterionResult remark_criterion(const RunConfig&) {
  Judge j;
  j.r.title = "Shift-difference operator U: hump succeeds, (I-P_l) U f_{l+1} stays large";
  const FiniteOperatorOnJ u = FiniteOperatorOnJ::shift_difference(4);
  const GlidingHumpResult h = gliding_hump({u}, 1e-3, 2);
  j.holds("gliding hump succeeds", h.success);
  j.at_most("certified block-subspace bound", h.certified_bound, 1e-3);
  double worst = 1e300;
  std::vector<std::size_t> ls;
  for (std::size_t l = 1; l <= 64; ++l) ls.push_back(l);
  if (h.success) ls.push_back(h.l);
  for (std::size_t l : ls) {
    const JamesVector col = JamesVector::in_f(u.column(l + 1));
    worst = std::min(worst, james_norm_value(apply_projection({l, ProjectionSide::kTail}, col)));
  }
  j.at_least("min ||(I-P_l) U f_{l+1}|| over l = 1..64 and the hump's l", worst, 1.0);
  std::ostringstream note;
  note << "hump l=" << h.l << " blocks=" << h.blocks.blocks() << " extent=" << h.blocks.extent();
  j.r.note = note.str();
  return j.r;
}

using CriterionFn = std::function<CriterionResult(const RunConfig&)>;

const std::vector<std::pair<int, CriterionFn>>& registry() {
  static const std::vector<std::pair<int, CriterionFn>> r{
      {1, walsh_ratio_criterion}, {2, oracle_criterion},       {3, isometry_criterion},
      {4, alteration_criterion},  {5, projection_criterion},   {6, tilde_criterion},
      {7, lift_criterion},        {8, certificate_criterion},  {9, degradation_criterion},
      {10, quotient_criterion},   {11, remark_criterion}};
  return r;
}

}  // namespace

std::vector<int> suite_criteria(const std::string& name) {
  if (name == "core") return {1, 2, 5};
  if (name == "blocks") return {3, 4, 11};
  if (name == "lifted") return {6, 7, 8, 9, 10};
  if (name == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  fail(ErrorCode::kInvalidArgument, "unknown suite '" + name + "' (core, blocks, lifted, all)");
}

CriterionResult run_criterion(int id, const RunConfig& config) {
  config.validate();
  for (const auto& [key, fn] : registry()) {
    if (key != id) continue;
    const auto t0 = Clock::now();
    CriterionResult r;
    try {
      r = fn(config);
    } catch (const Error& e) {
      r.assertions.push_back({std::string("raised: ") + e.what(), 0.0, 0.0, 0.0, false});
    }
    r.id = id;
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.pass = !r.assertions.empty() &&
             std::all_of(r.assertions.begin(), r.assertions.end(), [](const Assertion& a) { return a.pass; });
    if (r.time_limit > 0.0 && r.seconds > r.time_limit) {
      r.pass = false;
      r.note += (r.note.empty() ? "" : "; ") + std::string("exceeded the time limit");
    }
    return r;
  }
  fail(ErrorCode::kInvalidArgument, "unknown criterion " + std::to_string(id));
}

SuiteReport run_suite(const std::string& name, const RunConfig& config) {
  config.validate();
  SuiteReport rep;
  rep.suite = name;
  rep.config = config;
  const auto t0 = Clock::now();
  for (int id : suite_criteria(name)) rep.criteria.push_back(run_criterion(id, config));
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

std::string report_json(const SuiteReport& report, bool include_timing) {
  Json crit = Json::array();
  for (const CriterionResult& c : report.criteria) {
    Json asserts = Json::array();
    for (const Assertion& a : c.assertions)
      asserts.push_back({{"what", a.what}, {"value", a.value}, {"bound", a.bound}, {"tolerance", a.tolerance}, {"pass", a.pass}});
    Json e{{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"assertions", asserts}, {"note", c.note}};
    if (c.time_limit > 0.0) e["time_limit_seconds"] = c.time_limit;
    if (include_timing) e["seconds"] = c.seconds;
    crit.push_back(std::move(e));
  }
  const RunConfig& k = report.config;
  Json j{{"suite", report.suite},
         {"config",
          {{"seed", k.seed},
           {"norm_tol", k.norm_tol},
           {"solver_tol", k.solver_tol},
           {"cert_tol", k.cert_tol},
           {"oracle_cap", k.oracle_cap},
           {"walsh_cap", k.walsh_cap}}},
         {"pass", report.pass()},
         {"criteria", crit}};
  if (include_timing) j["seconds"] = report.seconds;
  return j.dump(2);
}

}  // namespace jamesop
