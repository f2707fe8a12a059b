#pragma once

#include "ezdkit/ezd.hpp"
#include "ezdkit/rng.hpp"

namespace ezdkit {

/// Uniformly sampled point of the Grassmannian of quadratic presentations:
/// n = (e^2-e+2)/2 quadric relations inside the m = e(e+1)/2 dimensional
/// space of quadrics, by full-rank rejection sampling of an m x n matrix.
PresentationSource sample_quadratic_algebra(int e, const FieldPtr& F, Rng& rng);

struct LinearFormVerdict {
  bool ezd = false;
  AElem partner;                 // the constructed l' when ezd
  std::vector<FElem> nu_ell;     // minors nu_1..nu_e of Xi_ell
  std::vector<FElem> nu_partner; // minors of Xi_ell'
};

/// Pointwise form of the generic-existence test: build the m x (m+1)
/// matrix ( [x_1 l] | ... | [x_e l] | Pi ), read off the signed maximal
/// minors nu_i, form l' = sum (-1)^(i-1) nu_i x_i and test the minors of
/// Xi_l'.  Complete for homogeneous linear forms over algebras with
/// Hilbert series [1, e, e-1].
LinearFormVerdict linear_form_ezd_test(const AlgebraPtr& A, const AElem& ell);

/// Per-instance classification used by the sampler and the fixtures.
struct InstanceClass {
  bool hilbert_ok = false; // Hilbert series is [1, e, e-1]
  bool ezd_ok = false;     // some exact zero divisor exists
  bool conca_ok = false;   // some Conca generator exists
};

InstanceClass classify_quadratic_instance(const PresentationSource& src,
                                          std::uint64_t seed,
                                          int random_forms = 20,
                                          std::uint64_t line_budget = 1000000);

struct SampleReport {
  int e = 0;
  std::string field;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t total = 0;
  std::uint64_t hilbert_ok = 0;
  std::uint64_t ezd_ok = 0;
  std::uint64_t conca_ok = 0;
};

/// Deterministic given (e, field, trials, seed): per-trial rng streams are
/// derived from the seed and the trial index, so reports are bit-identical
/// across runs and thread counts.
SampleReport density_report(int e, const FieldPtr& F, std::uint64_t trials, std::uint64_t seed,
                            int threads = 1);

} // namespace ezdkit
