#include "stabledev/errors.hpp"

namespace stabledev {

MonteCarloBudgetError::MonteCarloBudgetError(const std::string& what, double achieved_relative_ci)
    : std::runtime_error(what), achieved_relative_ci_(achieved_relative_ci) {}

void require(bool condition, const std::string& message) {
    if (!condition) throw DomainError(message);
}

}  // namespace stabledev
