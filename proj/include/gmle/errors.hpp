#pragma once

#include <stdexcept>
#include <string>

namespace gmle {

// Malformed or inconsistent input (bad matrices, undeclared vertices, ...).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Graph violates a structural rule (loops, forbidden double edges, directed cycles).
struct graph_error : input_error {
    using input_error::input_error;
};

// Declared vertex order breaks the partition conventions; carries the offending edge.
struct ordering_error : graph_error {
    int from, to;
    ordering_error(const std::string& msg, int from_, int to_)
        : graph_error(msg), from(from_), to(to_) {}
};

// No partition V = U + W compatible with the edge types exists.
struct partition_error : graph_error {
    using graph_error::graph_error;
};

struct dimension_mismatch : input_error {
    using input_error::input_error;
};

// Evaluation hit a vanishing denominator.
struct pole_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symbolically singular matrix passed to inverse().
struct singular_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The score-equation ideal has positive dimension; the ML degree is undefined.
// Carries the ideal's dimension and degree.
struct positive_dimension_error : std::runtime_error {
    int dim;
    long deg;
    positive_dimension_error(int dim_, long deg_)
        : std::runtime_error("score equation ideal has dimension " + std::to_string(dim_) +
                             " > 0; the ML degree is not well-defined (ideal degree " +
                             std::to_string(deg_) + ")"),
          dim(dim_),
          deg(deg_) {}
};

// A computation exceeded its configured step budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gmle
