#include "ezdkit/generic.hpp"

#include <thread>

#include "ezdkit/algebra.hpp"

namespace ezdkit {

namespace {

// quadric monomials x_i x_j (i <= j) in lex order
std::vector<std::pair<int, int>> quadric_pairs(int e) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < e; ++i)
    for (int j = i; j < e; ++j) out.emplace_back(i, j);
  return out;
}

Mat relation_matrix(const PresentationSource& src) {
  const int e = (int)src.vars.size();
  auto pairs = quadric_pairs(e);
  const FieldPtr F = src.field;
  Mat pi(F, (int)pairs.size(), (int)src.relations.size());
  for (int c = 0; c < (int)src.relations.size(); ++c) {
    if (src.relations[c].degree != 2)
      fail(Err::BadArgument, "the linear-form test needs a quadratic presentation");
    for (const auto& term : src.relations[c].terms) {
      int i = -1, j = -1;
      for (int v = 0; v < e; ++v) {
        if (term.exps[v] == 2) { i = j = v; }
        else if (term.exps[v] == 1) { (i < 0 ? i : j) = v; }
      }
      if (j < i) std::swap(i, j);
      int row = 0;
      for (int r = 0; r < (int)pairs.size(); ++r)
        if (pairs[r] == std::make_pair(i, j)) { row = r; break; }
      pi.at(row, c) = F->add(pi.at(row, c), term.coeff);
    }
  }
  return pi;
}

Mat minor_omitting(const Mat& m, int omit_col) {
  Mat r(m.F, m.rows, m.cols - 1);
  for (int i = 0; i < m.rows; ++i) {
    int cc = 0;
    for (int j = 0; j < m.cols; ++j) {
      if (j == omit_col) continue;
      r.at(i, cc++) = m.at(i, j);
    }
  }
  return r;
}

// minors nu_1..nu_e of ( [x_1 l] | ... | [x_e l] | Pi ) for the linear form
// with coefficient vector a
std::vector<FElem> nu_minors(const Mat& pi, const std::vector<std::pair<int, int>>& pairs,
                             const Vec& a) {
  const FieldPtr F = pi.F;
  const int e = (int)a.size();
  const int m = pi.rows;
  Mat xi(F, m, e + pi.cols);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) {
      if (F->is_zero(a[j])) continue;
      int lo = std::min(i, j), hi = std::max(i, j);
      int row = 0;
      for (int r = 0; r < m; ++r)
        if (pairs[r] == std::make_pair(lo, hi)) { row = r; break; }
      xi.at(row, i) = F->add(xi.at(row, i), a[j]);
    }
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < pi.cols; ++c) xi.at(r, e + c) = pi.at(r, c);
  if (xi.cols != m + 1)
    fail(Err::WrongHilbertSeries, "presentation is not minimal quadratic for this e");
  std::vector<FElem> nu;
  for (int i = 0; i < e; ++i) nu.push_back(determinant(minor_omitting(xi, i)));
  return nu;
}

} // namespace

PresentationSource sample_quadratic_algebra(int e, const FieldPtr& F, Rng& rng) {
  if (e < 2) fail(Err::BadArgument, "need e >= 2");
  if (!F->finite()) fail(Err::InfiniteField, "sampling needs a finite field");
  const int m = e * (e + 1) / 2;
  const int n = (e * e - e + 2) / 2;
  Mat pi(F, m, n);
  for (;;) {
    for (auto& x : pi.a) x = F->sample(rng);
    if (rank_of(pi) == n) break;
  }
  auto pairs = quadric_pairs(e);
  PresentationSource src;
  src.fspec = F->spec();
  src.field = F;
  for (int i = 1; i <= e; ++i) src.vars.push_back("x" + std::to_string(i));
  for (int c = 0; c < n; ++c) {
    PolyExpr rel;
    rel.degree = 2;
    for (int r = 0; r < m; ++r) {
      if (F->is_zero(pi.at(r, c))) continue;
      std::vector<int> exps(e, 0);
      exps[pairs[r].first] += 1;
      exps[pairs[r].second] += 1;
      rel.terms.push_back({pi.at(r, c), exps});
    }
    src.relations.push_back(std::move(rel));
  }
  return src;
}

LinearFormVerdict linear_form_ezd_test(const AlgebraPtr& A, const AElem& ell) {
  const int e = A->embdim();
  if (A->hilbert() != std::vector<int>{1, e, e - 1})
    fail(Err::WrongHilbertSeries, "linear-form test needs Hilbert series [1, e, e-1]");
  const FieldPtr F = A->field();
  for (int d = 0; d <= A->top_degree(); ++d) {
    if (d == 1) continue;
    for (int i = 0; i < A->h(d); ++i)
      if (!F->is_zero(ell.c[A->offset(d) + i]))
        fail(Err::BadArgument, "the test takes a homogeneous linear form");
  }

  LinearFormVerdict out;
  out.partner = A->zero();
  Mat pi = relation_matrix(A->source());
  auto pairs = quadric_pairs(e);
  // coefficients over the declared variables; h_1 = e means vars = basis
  Vec a = A->image_mod_m2(ell);
  out.nu_ell = nu_minors(pi, pairs, a);
  bool all_zero = true;
  for (const auto& nu : out.nu_ell)
    if (!F->is_zero(nu)) all_zero = false;
  if (all_zero) return out;

  Vec b(e, F->zero());
  FElem sign = F->one();
  for (int i = 0; i < e; ++i) {
    b[i] = F->mul(sign, out.nu_ell[i]);
    sign = F->neg(sign);
  }
  out.nu_partner = nu_minors(pi, pairs, b);
  all_zero = true;
  for (const auto& nu : out.nu_partner)
    if (!F->is_zero(nu)) all_zero = false;
  if (all_zero) return out;

  AElem lp = A->zero();
  for (int i = 0; i < e; ++i) lp = A->add(lp, A->smul(b[i], A->gen(i)));
  out.partner = lp;
  out.ezd = true;
  // the construction guarantees the pair; assert it outright
  if (!is_exact_pair(out.partner, ell))
    fail(Err::AssocCheckFailed, "linear-form construction failed the pair check");
  return out;
}

InstanceClass classify_quadratic_instance(const PresentationSource& src, std::uint64_t seed,
                                          int random_forms, std::uint64_t line_budget) {
  InstanceClass cls;
  const int e = (int)src.vars.size();
  AlgebraPtr A;
  try {
    A = GradedAlgebra::build(src);
  } catch (const Error& err) {
    if (err.code() == Err::NotArtinianWithinCap) return cls;
    throw;
  }
  if (A->hilbert() != std::vector<int>{1, e, e - 1}) return cls;
  cls.hilbert_ok = true;

  const FieldPtr F = A->field();
  const std::uint64_t q = F->order();
  // random forms first: a generic form works whenever any does
  Rng rng = Rng::derive(seed, 0x11f);
  for (int t = 0; t < random_forms && !cls.ezd_ok; ++t) {
    AElem ell = A->zero();
    bool nonzero = false;
    for (int i = 0; i < e; ++i) {
      FElem c = F->sample(rng);
      if (!F->is_zero(c)) nonzero = true;
      ell.c[A->offset(1) + i] = c;
    }
    if (!nonzero) continue;
    if (linear_form_ezd_test(A, ell).ezd) cls.ezd_ok = true;
  }
  // exhaustive line scans settle existence exactly
  std::uint64_t lines = 1;
  for (int i = 0; i < e; ++i) lines *= q;
  lines = (lines - 1) / (q - 1);
  if (lines > line_budget) fail(Err::BudgetExceeded, "line scan over budget");
  std::uint64_t blk = 1;
  for (int i = 0; i < e - 1; ++i) blk *= q;
  auto for_each_line = [&](auto&& fn) {
    std::uint64_t b = blk;
    for (int lead = 0; lead < e; ++lead, b /= q) {
      for (std::uint64_t idx = 0; idx < b; ++idx) {
        AElem ell = A->zero();
        ell.c[A->offset(1) + lead] = F->one();
        std::uint64_t rest = idx;
        for (int i = lead + 1; i < e; ++i) {
          ell.c[A->offset(1) + i] = F->element_at(rest % q);
          rest /= q;
        }
        if (fn(ell)) return;
      }
    }
  };
  if (!cls.ezd_ok)
    for_each_line([&](const AElem& ell) { return (cls.ezd_ok = linear_form_ezd_test(A, ell).ezd); });
  for_each_line([&](const AElem& ell) { return (cls.conca_ok = is_conca_generator(ell)); });
  return cls;
}

SampleReport density_report(int e, const FieldPtr& F, std::uint64_t trials, std::uint64_t seed,
                            int threads) {
  if (trials < 1) fail(Err::BadArgument, "need at least one trial");
  SampleReport rep;
  rep.e = e;
  rep.field = F->finite() ? "GF(" + std::to_string(F->order()) + ")" : "QQ";
  rep.trials = trials;
  rep.seed = seed;
  rep.total = trials;

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    SampleReport part;
    for (std::uint64_t t = lo; t < hi; ++t) {
      Rng rng = Rng::derive(seed, 2 * t);
      PresentationSource src = sample_quadratic_algebra(e, F, rng);
      InstanceClass cls = classify_quadratic_instance(src, Rng::derive(seed, 2 * t + 1).next());
      part.hilbert_ok += cls.hilbert_ok;
      part.ezd_ok += cls.ezd_ok;
      part.conca_ok += cls.conca_ok;
    }
    return part;
  };

  threads = std::max(1, threads);
  if (threads == 1 || trials < 8) {
    SampleReport part = run_range(0, trials);
    rep.hilbert_ok = part.hilbert_ok;
    rep.ezd_ok = part.ezd_ok;
    rep.conca_ok = part.conca_ok;
  } else {
    std::vector<SampleReport> parts((size_t)threads);
    std::vector<std::thread> pool;
    std::uint64_t per = (trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::uint64_t lo = std::min<std::uint64_t>(per * (std::uint64_t)t, trials);
      std::uint64_t hi = std::min<std::uint64_t>(lo + per, trials);
      pool.emplace_back([&parts, &run_range, t, lo, hi] { parts[(size_t)t] = run_range(lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : parts) {
      rep.hilbert_ok += part.hilbert_ok;
      rep.ezd_ok += part.ezd_ok;
      rep.conca_ok += part.conca_ok;
    }
  }
  return rep;
}

} // namespace ezdkit
