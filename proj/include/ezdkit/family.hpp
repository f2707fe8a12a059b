#pragma once

#include "ezdkit/ezd.hpp"
#include "ezdkit/module.hpp"

namespace ezdkit {

/// Input of the family construction: upper bidiagonal n x n matrix with w
/// and x alternating on the diagonal, y and z on the superdiagonal.  n = 1
/// uses only w; n = 2 ignores z.
struct ThetaSpec {
  int n = 1;
  AElem w, x, y, z;
};

AMat theta(const ThetaSpec& spec);

enum class Bt1Case { A, B };

struct Bt1Verdict {
  bool ok = false;
  std::optional<Bt1Case> which;
  std::vector<std::string> violations;
};

/// Validates the size-family hypotheses: (w, x) an exact pair, all inputs
/// in m \ m^2, y z = 0, plus case (a) w, x, y independent mod m^2 or case
/// (b) w in (x)+m^2 with y, z outside (x)+m^2.
Bt1Verdict check_bt1_hypotheses(const AElem& w, const AElem& x, const AElem& y, const AElem& z);

struct FamilyMember {
  std::string label; // "n=3" or the lambda value
  int n = 0;
  AMat presentation;
  int length = 0;
  std::vector<int> betti;
  Verdict indecomposable = Verdict::Undecided;
  TAReport ta; // periodicity certificate against the partner matrix
};

struct FamilyReport {
  std::string hypothesis_case;
  std::vector<FamilyMember> members;
  // pairwise isomorphism matrix for lambda families (Yes on the diagonal)
  std::vector<std::vector<Verdict>> pairwise;
};

/// Builds M_n for n in [n_lo, n_hi], certifies each member (length n*e,
/// constant Betti numbers, indecomposability, total acyclicity against
/// Theta_n(x, w, -y, -z)); throws HypothesesFail when the validator
/// rejects the data.
FamilyReport build_family(const AElem& w, const AElem& x, const AElem& y, const AElem& z,
                          int n_lo, int n_hi, const DecisionBudget& budget = {});

/// z in ann(y) with z outside m^2 (and outside (x)+m^2, which the search
/// prefers and the hypotheses in fact force).
std::optional<AElem> find_z_for_y(const AElem& w, const AElem& x, const AElem& y);

struct Bt2Clauses {
  bool ok = false;
  char clause = '-'; // 'a'..'d'
  std::vector<std::string> violations;
};

Bt2Clauses check_bt2_hypotheses(int n, const AElem& w, const AElem& x, const AElem& y,
                                const AElem& yprime, const AElem& z);

/// The lambda-family {M_n(w, x, lambda*y + y', z)}: every member certified
/// indecomposable and totally acyclic, pairwise isomorphism matrix filled
/// (expected: the identity pattern).
FamilyReport bt2_family(int n, const AElem& w, const AElem& x, const AElem& y,
                        const AElem& yprime, const AElem& z, const std::vector<FElem>& lambdas,
                        const DecisionBudget& budget = {});

struct Bt2Data {
  AElem y, yprime, z;
  char clause = '-';
};

/// Search pipeline behind the same-size families: a weakly annihilating z,
/// then two independent annihilators of z adjusted so clause (c) or (d)
/// validates.  Honest nothing when the finite-field search is exhausted.
std::optional<Bt2Data> find_bt2_data(const AElem& w, const AElem& x);

/// M_2(w, x, y) vs M_2(w', x', y') distinctness through the general
/// isomorphism decision; Yes means the modules are NOT isomorphic.
Verdict n2_pair_distinct(const AElem& w, const AElem& x, const AElem& y, const AElem& wp,
                         const AElem& xp, const AElem& yp, const DecisionBudget& budget = {});

} // namespace ezdkit
