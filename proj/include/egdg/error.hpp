#ifndef EGDG_ERROR_HPP
#define EGDG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace egdg {

/// Raised when an element solve or a time step produces unusable numbers.
/// Carries the offending element id when one is known (-1 otherwise).
class NumericalBreakdown : public std::runtime_error {
public:
    explicit NumericalBreakdown(const std::string& what, int element = -1)
        : std::runtime_error(what), element_(element) {}

    int element() const noexcept { return element_; }

private:
    int element_;
};

} // namespace egdg

#endif
