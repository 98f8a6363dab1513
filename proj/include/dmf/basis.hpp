#pragma once

#include "dmf/forms.hpp"

#include <cstdint>
#include <vector>

namespace dmf {

// Order in which the gap-window exponents are cleared while reducing
// j * f_{i-1} against the earlier family members.  Both orders must produce
// identical elements (the family is unique), which tests exercise directly.
enum class EliminationOrder { LowFirst, HighFirst };

// Member of the triangular basis of weakly holomorphic level-T forms:
//   series = u^((q-1)(r-i)+l) + O(u^((q-1)(r+1)+l)),
// F monic of degree i with constant term C, and expr the same element written
// as F(jT) * dT^r * ET^l in the generators.
struct BasisElement {
  FormParams params;
  int64_t i = 0;
  std::vector<TPoly> F;  // coefficients of F(x), ascending; F.back() == 1
  TPoly C;               // F(0)
  GenExpr expr;
  USeries series;
};

// Which seed the Fricke-stable family starts from; follows the parities of
// r and l.
enum class ParityCase { ROdd, REvenLOdd, REvenLEven };

// "r_odd" / "r_even_l_odd" / "r_even_l_even"
const char* parity_case_name(ParityCase c);

// Member of the triangular basis for the Fricke extension:
//   series = u^((q-1)((d_plus-1)-i)+l) + O(u^((q-1)d_plus+l)),
// with F monic of degree i in the extension's uniformizer jTp.
struct PlusBasisElement {
  FormParams params;
  ParityCase parity_case = ParityCase::REvenLEven;
  int64_t d_plus = 0;
  int64_t i = 0;
  std::vector<TPoly> F;
  TPoly C;
  GenExpr expr;
  USeries series;
};

// Elements 0..i_max of the level-T family for weight k, type l.  The working
// precision is raised internally so every element's gap window is fully
// visible; prec only sets a floor.  Incompatible (k, l) throws
// TypeWeightMismatch; negative r (poles at the cusp 0) is supported.
std::vector<BasisElement> canonical_basis(
    Workspace& W, int64_t k, int64_t l, int64_t i_max, int64_t prec,
    EliminationOrder order = EliminationOrder::LowFirst);

// The Fricke-stable analogue, seeded per parity case.
std::vector<PlusBasisElement> canonical_basis_plus(
    Workspace& W, int64_t k, int64_t l, int64_t i_max, int64_t prec,
    EliminationOrder order = EliminationOrder::LowFirst);

// Spanning set of the holomorphic weight-k type-l forms fixed by the Fricke
// involution, together with that space's dimension.  Every element is given
// exactly, as a two-term (or single central) combination of generator
// monomials; the i-th one leads at u^(i(q-1)+l).
struct PlusHolomorphicBasis {
  std::vector<GenExpr> elements;
  int64_t dim = 0;
};

// Requires k >= 0 (DomainError otherwise) and compatible (k, l).
PlusHolomorphicBasis plus_holomorphic_basis(Workspace& W, int64_t k,
                                            int64_t l);

}  // namespace dmf
