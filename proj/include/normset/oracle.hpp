#ifndef NORMSET_ORACLE_HPP
#define NORMSET_ORACLE_HPP

#include "normset/functional.hpp"
#include "normset/params.hpp"
#include "normset/vector.hpp"

namespace normset {

// Exhaustive enumeration parameters. The enumerated set: norming trees of
// height <= depth, weights m_{2j} for j <= weight_window, l2-combination
// coefficients from {k/2^grid_bits : sum k^2 <= 4^grid_bits}. Weighted
// children range over gapped successive families (not just covering
// partitions), which is what makes this an independent cross-check of the
// analytic engine.
struct OracleOptions {
    int depth = 3;
    int grid_bits = 6;
    long weight_window = 8;
    long node_budget = 20'000'000;
};

struct OracleResult {
    Rational value = Rational(0);
    FPtr witness;
    bool budget_exhausted = false;
    long nodes = 0;
};

// Exact rational maximum over the enumerated subset of G0: a certified lower
// bound of the norm that converges to it as depth and grid refine.
OracleResult norm_G0_oracle(const Vector& x, const ParameterSystem& p,
                            const OracleOptions& opt = {});

} // namespace normset

#endif
