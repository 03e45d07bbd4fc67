#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wittlab/cech.hpp"
#include "wittlab/module.hpp"
#include "wittlab/omega.hpp"
#include "wittlab/ore.hpp"
#include "wittlab/padic.hpp"
#include "wittlab/witt_vector.hpp"

// JSON encodings and inline literals. Every decoder throws ParseError on
// malformed input and accepts what the matching encoder writes.
namespace wittlab::io {

using json = nlohmann::json;

// Field: {"p", "q", "modulus"} (modulus low-to-high, monic).
json field_to_json(const FqContext& f);
const FqContext& field_from_json(const json& j);

// Field element: coefficient array over F_p, low degree first. Decoding
// also accepts a bare integer (image of Z).
json to_json(const FqElem& a);
FqElem fq_from_json(const FqContext& f, const json& j);

// {"lowest_exponent": e, "coefficients": [[F_p coeffs]...]}
json to_json(const LaurentPoly& a);
LaurentPoly laurent_from_json(const FqContext& f, const json& j);

// {"ring", "p", "q", "n", "components"}; components follow the ring.
json to_json(const WittFq& x);
json to_json(const WittLaurent& x);
WittFq witt_from_json(const json& j, const FqContext* field = nullptr);
WittLaurent witt_laurent_from_json(const json& j, const FqContext* field = nullptr);

// {"p", "q", "precision", "terms": [{"v", "coeff"}]}
json to_json(const OmegaElement& x);
OmegaElement omega_from_json(const json& j, const FqContext* field = nullptr);
// {"p", "q", "level", "slots": [Witt...]}
json to_json(const OmegaTrunc& x);
OmegaTrunc omega_trunc_from_json(const json& j, const FqContext* field = nullptr);

json to_json(const ChainMatrix& m);  // rows of Witt vectors
ChainMatrix matrix_from_json(const json& rows, const FqContext& field, unsigned level, std::size_t cols);
// {"p", "q", "level", "generators", "relations": [[Witt...]]}
json to_json(const FiniteChainModule& m);
FiniteChainModule module_from_json(const json& j, const FqContext* field = nullptr);
// {"matrix": [[Witt...]], "twist": t}
json to_json(const SemilinearMap& f);
SemilinearMap semilinear_from_json(const json& j, const FqContext& field, unsigned level, std::size_t g);

// {"zero": true, "absolute_precision": A} or {"v", "mantissa"}; exact zero
// has absolute_precision null.
json to_json(const PAdicApprox& x);
PAdicApprox padic_from_json(const json& j, const FqContext& field);
// {"p", "q", "lo", "hi", "finite_tail", "truncated", "slots": [{"i", "value"}]}
json to_json(const ICheckElement& x);
ICheckElement icheck_from_json(const json& j, const FqContext* field = nullptr);
json to_json(const JElement& x);
JElement j_from_json(const json& j, const FqContext* field = nullptr);

json to_json(const ClmWitness& w);
json to_json(const BaerResult& r);
json to_json(const LiftPairResult& r);
json to_json(const TorsionComparison& r);
json to_json(const TruncTensorResult& r);
json to_json(const HomEnumeration& h);
json to_json(const TransitionReport& r);
json to_json(const CohomologyResult& r);
json to_json(const TanakaReport& r);

// Inline literals.
//   field element: integer (image of Z) or [c0,c1,...]
//   Laurent polynomial: sums of c*t^e, t^e, t, c; 0
//   Witt vector: (a0,a1,...)
//   omega: terms joined by '+', each a '*'-product of V, V^k, p, p^k, an
//   integer, a Witt literal (..) or a Teichmuller shorthand [a].
// A literal starting with '{' is read as JSON instead.
FqElem parse_fq(const FqContext& f, std::string_view text);
LaurentPoly parse_laurent(const FqContext& f, std::string_view text);
WittFq parse_witt(const FqContext& f, std::string_view text, std::optional<unsigned> level = std::nullopt);
WittLaurent parse_witt_laurent(const CoeffRing& ring, std::string_view text, std::optional<unsigned> level = std::nullopt);
OmegaElement parse_omega(const FqContext& f, unsigned precision, std::string_view text);
//   W_Q element: 0, O(p^A), (a0,...), p^v, p^v*(a0,...); a Witt literal is
//   read at precision m when it has fewer components.
PAdicApprox parse_padic(const FqContext& f, unsigned precision, std::string_view text);
//   I or J element: slots "i=value" joined by ';', window [min i, max i]
//   unless lo/hi are given. JSON is accepted as well.
ICheckElement parse_icheck(const FqContext& f, unsigned precision, std::string_view text,
                           std::optional<int> lo = std::nullopt, std::optional<int> hi = std::nullopt);
JElement parse_j(const FqContext& f, unsigned precision, std::string_view text);

// Splits at depth-0 occurrences of sep, ignoring (), [] and {} nesting.
std::vector<std::string> split_top_level(std::string_view text, char sep);

}  // namespace wittlab::io
