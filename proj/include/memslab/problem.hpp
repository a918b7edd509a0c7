#pragma once

#include <stdexcept>

namespace memslab {

// Symbols of the boundary-value problem: beta*Laplacian^2 u - tau*Laplacian u
// = lambda/(1-u)^2 on the unit ball, u = alpha and Laplacian u = gamma at r=1.
struct ProblemParams {
    int dim = 9;
    double beta = 1.0;
    double tau = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;

    bool admissible() const { return gamma <= 0.0 && alpha < 1.0; }

    void validate() const {
        if (dim < 2) throw std::invalid_argument("ProblemParams: dimension must be >= 2");
        if (!(beta > 0.0)) throw std::invalid_argument("ProblemParams: beta must be > 0");
        if (tau < 0.0) throw std::invalid_argument("ProblemParams: tau must be >= 0");
        if (!admissible())
            throw std::invalid_argument("ProblemParams: (alpha, gamma) not admissible");
    }
};

}  // namespace memslab
