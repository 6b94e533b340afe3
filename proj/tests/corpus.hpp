#pragma once

// The standing corpus of verified maps the suites run against: identity
// ball maps, the typeIV graph maps, phase-rotated constructions, and the
// bidisk diagonal.

#include <hiso/construct.hpp>
#include <hiso/isometry.hpp>
#include <hiso/sampling.hpp>

#include <vector>

namespace corpus {

inline hiso::IsometryMap constructed_type_iv(int n, double theta, int order) {
    hiso::GraphConstructionProblem problem;
    problem.target = hiso::DomainSpec::type_iv(n);
    problem.unitary = hiso::MatrixXcd::Constant(1, 1, std::exp(hiso::Complex{0.0, theta}));
    problem.order = order;
    return hiso::solve_graph_isometry(problem).map;
}

/// Identity balls, graph maps, random-phase constructions, diagonal.
inline std::vector<hiso::IsometryMap> standard_maps(int order) {
    std::vector<hiso::IsometryMap> maps;
    maps.push_back(hiso::identity_ball_map(2, order));
    maps.push_back(hiso::identity_ball_map(3, order));
    for (int n = 3; n <= 6; ++n) maps.push_back(hiso::type_iv_graph_map(n, order));
    hiso::SampleStream phases(2024, "corpus_phases");
    for (int i = 0; i < 2; ++i)
        maps.push_back(constructed_type_iv(4, phases.uniform(0.1, 6.2), order));
    maps.push_back(hiso::diagonal_disk_map(order));
    return maps;
}

} // namespace corpus
