#pragma once

#include <optional>
#include <variant>

#include "ezdkit/algebra.hpp"

namespace ezdkit {

/// Verified exact pair (w, x): wx = 0, ann(x) = (w) and ann(w) = (x) as
/// subspaces, plus the bookkeeping a reviewer wants to see.
struct ExactPairCertificate {
  AElem w, x;
  IdealView ann_x, ann_w;
  int len_x = 0, len_w = 0; // lengths of (x) and (w)
  bool ann_x_is_w = false;  // ann(x) == (w)
  bool ann_w_is_x = false;  // ann(w) == (x)
  bool period2_exact = false; // rank(w.) + rank(x.) == dim R
};

enum class NotEzdReason { AnnNotCyclic, PartnerFailsBack };

struct EzdOutcome {
  std::optional<ExactPairCertificate> cert;
  NotEzdReason reason = NotEzdReason::AnnNotCyclic;
  bool ok() const { return cert.has_value(); }
};

/// Matrix of multiplication by x as a map m/m^2 -> m^2 (size h_2 x h_1);
/// full rank iff x m = m^2.
struct XiMatrix {
  AElem x;
  Mat mat;
  int rank = 0;
};

XiMatrix xi_matrix(const AElem& x);

/// Decision procedure behind every certificate: ann(x) must be cyclic and
/// its canonical generator must annihilate back onto (x).  Throws on zero
/// and unit input.
EzdOutcome is_exact_zero_divisor(const AElem& x);

bool is_exact_pair(const AElem& w, const AElem& x);

struct MinorsOutcome {
  bool degenerate = true;
  std::string degenerate_stage; // "x" or "w" when degenerate
  AElem w;
  std::vector<FElem> minors_x; // maximal minors of Xi_x, omitting column j
  std::vector<FElem> minors_w;
};

/// Partner construction from the signed maximal minors of Xi_x
/// (w = sum_j (-1)^(j-1) mu_j(x) x_j); requires Hilbert series [1, e, e-1].
MinorsOutcome partner_via_minors(const AElem& x);

bool is_conca_generator(const AElem& x);

enum class ScanMode { AllOfM, ProjectiveLines };

struct ScanOptions {
  ScanMode mode = ScanMode::AllOfM;
  std::uint64_t budget = 1000000;
  int witness_cap = 16;
  int threads = 1;
};

struct ScanReport {
  ScanMode mode = ScanMode::AllOfM;
  std::uint64_t scanned = 0;
  std::uint64_t ezd_count = 0;
  std::uint64_t conca_count = 0;
  std::vector<ExactPairCertificate> witnesses; // capped, in scan order
};

/// Exhaustive verification over finite fields.  AllOfM iterates every
/// element of m; ProjectiveLines iterates one representative per line of
/// (m/m^2) \ 0, valid for short algebras where the property only depends on
/// the leading form and is invariant under unit scaling.
ScanReport scan_ezd(const AlgebraPtr& A, const ScanOptions& opts = {});

/// z in m\m^2 with z m properly contained in m^2 (rank Xi_z < f), or
/// nothing.  Complete over finite fields; over QQ a bounded integer sweep
/// per affine chart is tried.
std::optional<AElem> find_weak_annihilated(const AlgebraPtr& A);

} // namespace ezdkit
