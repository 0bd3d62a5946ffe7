#pragma once

#include "sge/reduction.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sge {

class ProblemError : public std::runtime_error {
public:
    ProblemError(const std::string& what, int line);
    int line;
};

struct ProblemOptions {
    std::size_t max_pairs = 10000;
    double tolerance = 1e-8;
    std::uint64_t seed = 20240917;
    int points = 200;

    friend bool operator==(const ProblemOptions&, const ProblemOptions&) = default;
};

/// Problem definition read from a sectioned key/value file:
///
///   [problem]   name, pde, dependent, coordinates, parameters
///   [frame]     coefficients (x:1, y:1), time, speed
///   [pipeline]  steps (integrate_once, reduce_order)
///   [options]   max_pairs, tolerance, seed, points
///   [bindings]  parameter = numeric value, used for numeric verification
///   [reference] case name = equation; equation; ...
struct Problem {
    std::string name;
    std::string pde;
    std::string dependent = "u";
    std::vector<std::string> coordinates;
    std::vector<std::string> parameters;
    WaveFrame frame;
    std::vector<std::string> steps;
    ProblemOptions options;
    std::vector<std::pair<std::string, std::string>> bindings;
    std::vector<std::pair<std::string, std::vector<std::string>>> reference;

    friend bool operator==(const Problem& a, const Problem& b);
};

Problem parse_problem(const std::string& text);
std::string serialize_problem(const Problem& p);
Problem load_problem(const std::string& path);

}  // namespace sge
