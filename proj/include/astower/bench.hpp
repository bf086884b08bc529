#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "astower/isomorphism.hpp"
#include "astower/tower.hpp"

namespace astower {

struct BenchRecord {
    std::string op;
    std::uint32_t level = 0;
    std::size_t size = 0;
    std::uint64_t ns = 0; // median wall time
    int median_of = 0;
};

inline const std::vector<std::string> kBenchOps = {
    "push_down", "lift_up",     "elem_mul",  "elem_inv",
    "iter_frobenius", "pseudotrace", "apply_iso", "apply_inverse"};

// Times each op at each level with median-of-reps wall clock; sigma ops need
// a general tower with computed images, frobenius/pseudotrace need the beta
// tables.
std::vector<BenchRecord> run_bench(const TowerDescriptor& t, const std::vector<std::string>& ops,
                                   std::uint32_t level_lo, std::uint32_t level_hi, int reps,
                                   std::uint64_t seed, const GeneralTower* general = nullptr);

// Header: op,level,size,ns,median_of
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

// Least-squares slope of log(ns) against log(size) for one op.
double loglog_slope(const std::vector<BenchRecord>& records, const std::string& op);

} // namespace astower
