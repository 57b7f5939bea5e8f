#pragma once

#include "wsq/sequence.hpp"
#include "wsq/settings.hpp"
#include "wsq/verdict.hpp"

namespace wsq {

// All checkers work on the common horizon min(J_M, J_N).  When both operands
// are closed-form families with an analytically true answer the verdict is
// upgraded to proved with exact constants; negative and open cases are decided
// by the tail trend of the named statistic.

// N_j <= A * M_j with one constant.  Statistic d_j = l^N_j - l^M_j.
Verdict check_strong_dom(const LogSequence& m, const LogSequence& n, const Settings& st = {});

// M precedes N: sup_j (M_j / N_j)^{1/j} finite.  Statistic r_j = (l^M_j - l^N_j)/j.
Verdict check_preceq(const LogSequence& m, const LogSequence& n, const Settings& st = {});

// Equivalence: check_preceq in both directions, combined.
Verdict check_approx(const LogSequence& m, const LogSequence& n, const Settings& st = {});

// Moderate growth M_{j+k} <= C^{j+k} M_j M_k.  Diagonal statistic
// g_j = (l_{2j} - 2 l_j)/(2j) plus the exact two-index scan; both must agree.
Verdict check_mg(const LogSequence& m, const Settings& st = {});

// Root-quotient ratio condition: some L in {2,3,4,8} for which the tail of
// l_{Lj}/(Lj) - l_j/j stays above a strictly positive margin.  Requires lc().
Verdict check_om1_char(const LogSequence& m, const Settings& st = {});

}  // namespace wsq
