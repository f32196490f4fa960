#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "stabledev/levy.hpp"
#include "stabledev/sampler.hpp"

namespace stabledev {

// 1-Lipschitz function of a vector.
struct TestFunction {
    std::string name;
    std::function<double(const Vec&)> evaluate;
    double lipschitz_constant = 1.0;
    // Linear targets know their exact mean under the stable law (alpha > 1).
    std::function<double(const StableModel&)> exact_mean;
};

TestFunction linear_function(const Vec& direction);  // direction must be a unit vector
TestFunction coordinate_function(int dimension, int index);
TestFunction euclidean_norm();
TestFunction max_coordinate();
TestFunction distance_to_ball(const Vec& center, double radius);

// Functional of a configuration with |F(omega + y) - F(omega)| <= ||y||.
struct TestFunctional {
    std::string name;
    std::function<double(const Configuration&)> evaluate;
    bool difference_bound_certified = false;
};

// F(omega) = sum over points of min(||y||, K).
TestFunctional capped_sum(double cap);

struct RegistrationCheck {
    bool pass;
    double worst_excess;  // max of |difference| - bound over the tested pairs
    long pairs;
};

// Lipschitz check on random pairs of points of the given dimension.
RegistrationCheck check_lipschitz(const TestFunction& fn, int dimension, long pairs = 10000,
                                  std::uint64_t seed = 1, double tolerance = 1e-9);

// |D_y F| <= ||y|| on random (configuration, y) pairs drawn from the model.
RegistrationCheck check_difference_bound(const TestFunctional& functional, const StableModel& model,
                                         long pairs = 10000, std::uint64_t seed = 1, double tolerance = 1e-9);

}  // namespace stabledev
