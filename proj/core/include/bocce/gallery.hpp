#pragma once

#include <string>
#include <vector>

#include "bocce/convergence.hpp"
#include "bocce/step_function.hpp"

namespace bocce {
namespace gallery {

/// f_k identically the k-th unit vector of l2.
FunctionSequence gen_ex32(std::size_t prefix);
/// f_k = 1_{I^k_1} 2^k e_k in l2, level k.
FunctionSequence gen_ex34(std::size_t prefix);
/// The k-th Rademacher function as a +-1 step function at level k.
StepFunction gen_rademacher(int k);
/// r_1, ..., r_K as a real-valued sequence.
FunctionSequence gen_rademacher_seq(std::size_t prefix);
/// f_k = e_k r_k in l2.
FunctionSequence gen_ex52(std::size_t prefix);
/// f_k = sum_{i=1}^{2^k} 1_{I^k_i} e_{2^k + i} in l2.
FunctionSequence gen_ex53(std::size_t prefix);
/// g_k = 2^{k/4} f_k with f_k from gen_ex53.
FunctionSequence gen_ex53_scaled(std::size_t prefix);
/// f_k = (1/k) sum_{i=1}^k r_i e_i in l1.
FunctionSequence gen_ex55(std::size_t prefix);
/// f_n = 2^n 1_{[0, 2^-n)}, the dyadic spike (real-valued).
FunctionSequence gen_spike(std::size_t prefix);

/// The coordinate-shell test integrand that separates ex34 from limited
/// convergence: b(omega) pairs coordinate j on the shell [2^-(j+1), 2^-j).
TestG ex34_shell_test(std::size_t prefix);

/// Dual witness b(omega) = (1_{[r_i = 1]}(omega))_i (truncated to the
/// prefix's coordinates) that separates ex55 from weak convergence.
StepFunction ex55_dual_witness(std::size_t prefix);

const std::vector<std::string>& ids();
bool has_id(const std::string& id);
FunctionSequence make_sequence(const std::string& id, std::size_t prefix);

/// Per-example report configuration: attaches the example's separating
/// tests/duals and a tolerance that resolves its trend levels.
ReportConfig report_config(const std::string& id, std::size_t prefix);

} // namespace gallery
} // namespace bocce
