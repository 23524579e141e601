#pragma once

// Analytic values of the correlation function at the transfer time, checked
// against the spectral sum with phases (-1)^k.

#include <string>
#include <vector>

#include "qchain/evolve.hpp"

namespace qchain {

enum class Method { ClosedForm, FallbackDirectSum };

std::string_view to_string(Method m);

struct ClosedFormResult {
  double value = 0.0;
  Method method = Method::ClosedForm;
  /// |value - direct spectral sum|
  double residual_vs_direct = 0.0;
  /// Which expression produced the value, e.g. "4phi3", "double-sum", "endpoint".
  std::string formula;
};

/// sum_k U_rk U_sk (-1)^k in extended precision.
double direct_alternating_sum(const FamilySpec& spec, int r, int s);

// Each f_T_* checks that q^{-1} is odd/odd (NotOddOdd) and that every phase at
// the transfer time is (-1)^k (PhaseConditionUnmet), then evaluates the
// closed form. Values follow the chain sign convention (positive couplings).
ClosedFormResult f_T_qkrawtchouk(const FamilySpec& spec, int r, int s);
ClosedFormResult f_T_affine(const FamilySpec& spec, int r, int s);
ClosedFormResult f_T_quantum(const FamilySpec& spec, int r, int s);
ClosedFormResult f_T_dual_qk(const FamilySpec& spec, int r, int s);
ClosedFormResult f_T_qracah(const FamilySpec& spec, int r, int s);
double f_T_qhahn_N0(const FamilySpec& spec);
double f_T_dual_qhahn_N0(const FamilySpec& spec);
/// Dispatches on the family; q-Hahn and dual q-Hahn only support (N,0) and (0,N).
ClosedFormResult f_T(const FamilySpec& spec, int r, int s);

/// The m-sum over kernels for affine, quantum, dual q-Krawtchouk and q-Racah,
/// valid for every (r, s); no phase precondition.
double closed_form_sum(const FamilySpec& spec, int r, int s);
/// The balanced 4phi3 for q-Krawtchouk; requires r + s <= N.
double qkrawtchouk_4phi3(const FamilySpec& spec, int r, int s);

/// f_{N,0}(T) endpoint expressions for every family except q-Krawtchouk's
/// general form; no phase precondition.
double endpoint_formula(const FamilySpec& spec);
/// f_{N,0}(T) for q-Krawtchouk at general p.
double qkrawtchouk_endpoint(const Number& p, const Number& q, int N);

struct ArgmaxResult {
  std::size_t index = 0;
  Number p;
  double value = 0.0;
};

/// Grid maximiser of |f_{N,0}(T)| over p for q-Krawtchouk.
ArgmaxResult argmax_p(const RationalQ& q, int N, const std::vector<Number>& p_grid);

} // namespace qchain
