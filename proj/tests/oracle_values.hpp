#pragma once

// Reference values recorded from an oracle run of this code base
// (single-threaded, x86-64, Eigen 3.4.0, -O3). The acceptance checks
// compare fresh runs against these within the stated factors.

namespace qsf::oracle {

// dirichlet schedule: d = 511, Omega_k = (1/k, 1 - 1/k) for
// k = 2, 4, ..., 64, lambda = 1. Operator-norm resolvent error of the
// k = 64 member (probe independent).
inline constexpr double kDirichletOpNormK64 = 0.0073718924878547797;

// rotating subspaces: d = 11, N = 10, seed 2026, lambda = 1,
// probes = random_probes(11, 3, 29). Max strong error at n = N.
inline constexpr double kRotatingStrongErrAtN = 2.7259593953104416e-16;

// absorption: d = 31, N = 8, theta = 0.5, theta0 = 0.3, eps_n = 1/n,
// lambda = 1. Operator-norm resolvent error of the n = 8 member.
inline constexpr double kAbsorptionOpNormAtN = 0.0010449723801311398;

}  // namespace qsf::oracle
