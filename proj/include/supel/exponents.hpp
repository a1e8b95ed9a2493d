#pragma once

// Discrepancy exponent bookkeeping for D.  Each subset S of the axes indexes
// a family of boundary points (those whose off-S coordinates vanish); its
// growth exponent in the discrepancy bound depends only on the exponents of
// the axes outside S:
//   |S| = 1:        d - 1 - sum_{l not in S} 1/w_l          (O and Omega)
//   |S| = j >= 2:   d - 1 - (j-1)/(d+1) - (2d/(d+1)) sum_{l not in S} 1/w_l
// The j = d term reduces to d - 2 + 2/(d+1), the classical curved-boundary
// exponent.  Alongside these we tabulate the coarse aggregate bound, the
// supersphere case split (Randol), and the finite-type bound the classical
// Fourier argument gives.

#include <cmath>
#include <string>
#include <vector>

#include "supel/domain.hpp"

namespace supel {

struct ExponentTerm {
    std::vector<int> subset;  // 1-based axis indices in S
    double exponent = 0.0;
};

struct ExponentTable {
    DomainSpec domain;
    std::vector<ExponentTerm> first_sum;     // |S| = 1, tagged O and Omega
    std::vector<ExponentTerm> higher_terms;  // |S| >= 2
    double simple_bound = 0.0;     // max((d-1)(1-1/w), d-2+2/(d+1))
    double randol_bound = 0.0;     // supersphere case split at w vs d+1
    double classical_bound = 0.0;  // (d-1)(1 - 1/((w-1)d+1))
    double omega_lower = 0.0;      // max exponent in first_sum
    bool planar_warning = false;   // d == 2: exponents are formal only
};

inline ExponentTable exponent_table(const DomainSpec& dom) {
    const int d = dom.dimension;
    if (d < 2)
        throw std::invalid_argument("exponent_table: d must be >= 2");
    ExponentTable table;
    table.domain = dom;
    table.planar_warning = (d == 2);

    std::vector<double> inv(static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l) inv[static_cast<std::size_t>(l)] = 1.0 / dom.omega(l);

    const unsigned full = (1u << d) - 1u;
    for (unsigned mask = 1; mask <= full; ++mask) {
        ExponentTerm term;
        double outside = 0.0;
        int j = 0;
        for (int l = 0; l < d; ++l) {
            if (mask & (1u << l)) {
                term.subset.push_back(l + 1);
                ++j;
            } else {
                outside += inv[static_cast<std::size_t>(l)];
            }
        }
        if (j == 1) {
            term.exponent = d - 1.0 - outside;
            table.first_sum.push_back(std::move(term));
        } else {
            term.exponent = d - 1.0 - (j - 1.0) / (d + 1.0) -
                            (2.0 * d / (d + 1.0)) * outside;
            table.higher_terms.push_back(std::move(term));
        }
    }

    const double w = dom.omega_max;
    const double curved = d - 2.0 + 2.0 / (d + 1.0);
    table.simple_bound = std::max((d - 1.0) * (1.0 - 1.0 / w), curved);
    table.randol_bound = (w < d + 1.0) ? curved : (d - 1.0) * (1.0 - 1.0 / w);
    table.classical_bound = (d - 1.0) * (1.0 - 1.0 / ((w - 1.0) * d + 1.0));
    table.omega_lower = table.first_sum.front().exponent;
    for (const auto& term : table.first_sum)
        table.omega_lower = std::max(table.omega_lower, term.exponent);
    return table;
}

}  // namespace supel
