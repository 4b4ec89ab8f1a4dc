#pragma once

#include <functional>

#include "tqftwb/frobenius.hpp"

namespace tqftwb::frob {

using Matrix = std::vector<std::vector<std::int64_t>>;

/// Apex over the base with isotropy A_x^k; each leg sends x to the diagonal
/// object and the coordinate blocks through the given integer matrix
/// (one row per boundary circle, one column per apex block).
Span linear_span(const AbelianModel& model, int k, const Matrix& left, const Matrix& right);
Matrix unit_matrix(int k);

/// Called at each composition node, after its factors, with the two
/// evaluated factors (inner first), their homotopy composite and the
/// rendered node.
using ComposeHook = std::function<void(const Span& inner, const Span& outer,
                                       const Span& homotopy, const std::string& node)>;

Span evaluate_traced(const AbelianModel& model, const cob::Term& term, const EvalOptions& opts,
                     const ComposeHook& hook);

}  // namespace tqftwb::frob
