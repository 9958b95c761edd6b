#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qsep/instance.hpp"

namespace qsep {

using EnergyOracle = std::function<double(const std::string&)>;
// Exact oracle reporting quarter-pi units instead of radians.
using ExactEnergyOracle = std::function<std::int64_t(const std::string&)>;

struct QueryLog {
    std::vector<std::pair<std::string, double>> queries;  // (bits, energy in radians)
    int count() const { return static_cast<int>(queries.size()); }
};

struct OracleSolution {
    std::string bits;
    QueryLog log;
    int sigma = +1;  // sign convention the decisions were made under
};

// Recovers the watermark target from energy residues mod 2pi: one query for
// a random start state plus one per spin. n+1 queries total.
OracleSolution solve(const EnergyOracle& energy, int n, std::uint64_t seed,
                     SignConvention sign = SignConvention::TargetIsGround);
OracleSolution solve(const ExactEnergyOracle& energy, int n, std::uint64_t seed,
                     SignConvention sign = SignConvention::TargetIsGround);

// The oracle cannot distinguish (sigma, t) from (-sigma, complement of t);
// auto-sign fixes the TargetIsGround reading and spends one extra query on
// a residue consistency probe, n+2 queries total.
OracleSolution solve_auto_sign(const EnergyOracle& energy, int n, std::uint64_t seed);

// Exact-path oracle backed by an instance diagonal.
OracleSolution solve_instance(const Instance& instance, std::uint64_t seed);

}  // namespace qsep
