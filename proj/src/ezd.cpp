#include "ezdkit/ezd.hpp"

#include <thread>

namespace ezdkit {

namespace {

void require_short(const GradedAlgebra& A) {
  if (!A.is_short()) fail(Err::NotShort, "operation needs m^3 = 0");
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

} // namespace

XiMatrix xi_matrix(const AElem& x) {
  const GradedAlgebra& A = *x.A;
  require_short(A);
  if (!A.in_m(x)) fail(Err::NotInMaxIdeal, "Xi matrix needs x in m");
  const int e = A.h(1), f = A.h(2);
  Mat m(A.field(), f, e);
  for (int j = 0; j < e; ++j) {
    AElem prod = A.multiply(x, A.gen(j));
    for (int i = 0; i < f; ++i) m.at(i, j) = prod.c[A.offset(2) + i];
  }
  return XiMatrix{x, m, rank_of(m)};
}

EzdOutcome is_exact_zero_divisor(const AElem& x) {
  const GradedAlgebra& A = *x.A;
  if (A.is_zero(x)) fail(Err::ZeroElement, "zero is not an exact zero divisor");
  if (A.is_unit(x)) fail(Err::UnitElement, "units are not zero divisors");

  IdealView ann_x = A.annihilator(x);
  // ann(x) is cyclic iff dim ann(x)/(m ann(x)) = 1
  RowSpace m_ann(A.field(), A.dim());
  for (int g = 0; g < A.h(1); ++g) {
    AElem gen = A.gen(g);
    for (const auto& b : ann_x.basis) m_ann.insert(A.multiply(gen, AElem{x.A, b}).c);
  }
  int cyc = ann_x.dim() - m_ann.dim();
  if (cyc != 1) return EzdOutcome{std::nullopt, NotEzdReason::AnnNotCyclic};

  // canonical partner: first basis vector of ann(x) outside m*ann(x)
  AElem w = A.zero();
  bool found = false;
  for (const auto& b : ann_x.basis)
    if (!m_ann.contains(b)) {
      w = AElem{x.A, b};
      found = true;
      break;
    }
  if (!found) return EzdOutcome{std::nullopt, NotEzdReason::AnnNotCyclic};

  IdealView ideal_w = A.principal_ideal(w);
  if (!ann_x.same_subspace(ideal_w))
    return EzdOutcome{std::nullopt, NotEzdReason::AnnNotCyclic};
  IdealView ann_w = A.annihilator(w);
  IdealView ideal_x = A.principal_ideal(x);
  if (!ann_w.same_subspace(ideal_x))
    return EzdOutcome{std::nullopt, NotEzdReason::PartnerFailsBack};

  ExactPairCertificate cert;
  cert.w = w;
  cert.x = x;
  cert.ann_x = ann_x;
  cert.ann_w = ann_w;
  cert.len_x = ideal_x.dim();
  cert.len_w = ideal_w.dim();
  cert.ann_x_is_w = true;
  cert.ann_w_is_x = true;
  cert.period2_exact =
      rank_of(A.multiplication_operator(w)) + rank_of(A.multiplication_operator(x)) == A.dim();
  return EzdOutcome{cert, NotEzdReason::AnnNotCyclic};
}

bool is_exact_pair(const AElem& w, const AElem& x) {
  if (w.A.get() != x.A.get()) fail(Err::AlgebraMismatch, "pair across algebras");
  const GradedAlgebra& A = *x.A;
  if (A.is_zero(w) || A.is_zero(x) || A.is_unit(w) || A.is_unit(x)) return false;
  if (!A.is_zero(A.multiply(w, x))) return false;
  if (!A.annihilator(x).same_subspace(A.principal_ideal(w))) return false;
  return A.annihilator(w).same_subspace(A.principal_ideal(x));
}

MinorsOutcome partner_via_minors(const AElem& x) {
  const GradedAlgebra& A = *x.A;
  require_short(A);
  const int e = A.h(1);
  if (A.hilbert() != std::vector<int>{1, e, e - 1})
    fail(Err::WrongHilbertSeries, "minor construction needs Hilbert series [1, e, e-1]");
  if (!A.in_m_not_m2(x)) fail(Err::NotInMaxIdeal, "x must lie in m \\ m^2");
  const Field& F = *A.field();

  MinorsOutcome out;
  out.w = A.zero();
  XiMatrix xi_x = xi_matrix(x);
  bool all_zero = true;
  for (int j = 0; j < e; ++j) {
    FElem mu = determinant(minor_omitting(xi_x.mat, j));
    if (!F.is_zero(mu)) all_zero = false;
    out.minors_x.push_back(mu);
  }
  if (all_zero) {
    out.degenerate = true;
    out.degenerate_stage = "x";
    return out;
  }
  AElem w = A.zero();
  FElem sign = F.one();
  for (int j = 0; j < e; ++j) {
    w = A.add(w, A.smul(F.mul(sign, out.minors_x[j]), A.gen(j)));
    sign = F.neg(sign);
  }
  out.w = w;
  XiMatrix xi_w = xi_matrix(w);
  all_zero = true;
  for (int j = 0; j < e; ++j) {
    FElem nu = determinant(minor_omitting(xi_w.mat, j));
    if (!F.is_zero(nu)) all_zero = false;
    out.minors_w.push_back(nu);
  }
  if (all_zero) {
    out.degenerate = true;
    out.degenerate_stage = "w";
    return out;
  }
  out.degenerate = false;
  // the construction guarantees this; assert it outright
  if (!is_exact_pair(out.w, x))
    fail(Err::AssocCheckFailed, "minor-construction partner failed the pair check");
  return out;
}

bool is_conca_generator(const AElem& x) {
  const GradedAlgebra& A = *x.A;
  require_short(A);
  if (A.is_unit(x)) fail(Err::NotInMaxIdeal, "Conca generators lie in m");
  if (!A.is_zero(A.multiply(x, x))) return false;
  return xi_matrix(x).rank == A.h(2);
}

namespace {

struct ScanChunk {
  std::uint64_t ezd = 0, conca = 0;
  std::vector<ExactPairCertificate> witnesses;
};

} // namespace

ScanReport scan_ezd(const AlgebraPtr& A, const ScanOptions& opts) {
  const Field& F = *A->field();
  if (!F.finite()) fail(Err::InfiniteField, "scans need a finite field");

  const std::uint64_t q = F.order();
  const int e = A->h(1);
  std::uint64_t total = 0;
  if (opts.mode == ScanMode::AllOfM) {
    total = A->m_size();
  } else {
    require_short(*A);
    std::uint64_t qe = 1;
    for (int i = 0; i < e; ++i) qe *= q;
    total = (qe - 1) / (q - 1);
  }
  if (total > opts.budget)
    fail(Err::BudgetExceeded, std::to_string(total) + " elements exceed budget " +
                                  std::to_string(opts.budget));

  // line representatives: leading position 0 first; positions before the
  // leading 1 are zero, later ones run through all of k
  std::uint64_t lead_block = 1;
  for (int i = 0; i < e - 1; ++i) lead_block *= q;
  auto line_rep = [&](std::uint64_t idx) {
    AElem x = A->zero();
    std::uint64_t blk = lead_block;
    for (int l = 0; l < e; ++l) {
      if (idx < blk) {
        x.c[A->offset(1) + l] = F.one();
        for (int j = l + 1; j < e; ++j) {
          x.c[A->offset(1) + j] = F.element_at(idx % q);
          idx /= q;
        }
        return x;
      }
      idx -= blk;
      blk /= q;
    }
    fail(Err::BadArgument, "line index out of range");
  };

  auto make = [&](std::uint64_t i) {
    return opts.mode == ScanMode::AllOfM ? A->m_element_at(i) : line_rep(i);
  };
  auto scan_range = [&](std::uint64_t begin, std::uint64_t end) {
    ScanChunk out;
    const bool conca_too = A->is_short();
    for (std::uint64_t i = begin; i < end; ++i) {
      AElem x = make(i);
      if (A->is_zero(x)) continue;
      EzdOutcome o = is_exact_zero_divisor(x);
      if (o.ok()) {
        ++out.ezd;
        if ((int)out.witnesses.size() < opts.witness_cap) out.witnesses.push_back(*o.cert);
      }
      if (conca_too && is_conca_generator(x)) ++out.conca;
    }
    return out;
  };

  int threads = std::max(1, opts.threads);
  std::vector<ScanChunk> chunks;
  if (threads == 1 || total < 1024) {
    chunks.push_back(scan_range(0, total));
  } else {
    chunks.resize((size_t)threads);
    std::vector<std::thread> pool;
    std::uint64_t per = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::uint64_t b = std::min<std::uint64_t>(per * (std::uint64_t)t, total);
      std::uint64_t en = std::min<std::uint64_t>(b + per, total);
      pool.emplace_back([&chunks, &scan_range, t, b, en] {
        chunks[(size_t)t] = scan_range(b, en);
      });
    }
    for (auto& th : pool) th.join();
  }

  ScanReport rep;
  rep.mode = opts.mode;
  rep.scanned = total;
  for (const auto& c : chunks) {
    rep.ezd_count += c.ezd;
    rep.conca_count += c.conca;
    for (const auto& w : c.witnesses)
      if ((int)rep.witnesses.size() < opts.witness_cap) rep.witnesses.push_back(w);
  }
  return rep;
}

std::optional<AElem> find_weak_annihilated(const AlgebraPtr& A) {
  require_short(*A);
  const int e = A->h(1), f = A->h(2);
  if (f < 2 || f > e - 1)
    fail(Err::PreconditionFailed,
         "need 2 <= f <= e-1, got e = " + std::to_string(e) + ", f = " + std::to_string(f));
  const Field& F = *A->field();

  auto weak = [&](const AElem& z) { return xi_matrix(z).rank < f; };

  if (F.finite()) {
    const std::uint64_t q = F.order();
    std::uint64_t blk = 1;
    for (int i = 0; i < e - 1; ++i) blk *= q;
    for (int lead = 0; lead < e; ++lead, blk /= q) {
      for (std::uint64_t idx = 0; idx < blk; ++idx) {
        AElem z = A->zero();
        z.c[A->offset(1) + lead] = F.one();
        std::uint64_t rest = idx;
        for (int j = lead + 1; j < e; ++j) {
          z.c[A->offset(1) + j] = F.element_at(rest % q);
          rest /= q;
        }
        if (weak(z)) return z;
      }
    }
    return std::nullopt;
  }

  // bounded integer sweep per affine chart over QQ; incomplete by design
  const long long B = 3;
  const std::uint64_t span = 2 * B + 1;
  for (int lead = 0; lead < e; ++lead) {
    std::uint64_t count = 1;
    for (int i = 0; i < e - 1 - lead; ++i) count *= span;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      AElem z = A->zero();
      z.c[A->offset(1) + lead] = F.one();
      std::uint64_t rest = idx;
      for (int j = lead + 1; j < e; ++j) {
        z.c[A->offset(1) + j] = F.from_int((long long)(rest % span) - B);
        rest /= span;
      }
      if (weak(z)) return z;
    }
  }
  return std::nullopt;
}

} // namespace ezdkit
