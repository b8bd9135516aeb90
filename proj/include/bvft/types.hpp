#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace bvft {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntVector = Eigen::VectorXi;
using Index = Eigen::Index;

/// Action-value table, states x actions.
using QTable = Matrix;

/// Iterative solver failed to reach tolerance; carries the last residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Malformed or inconsistent data (files, dataset rows, index bounds).
class DataError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bvft
