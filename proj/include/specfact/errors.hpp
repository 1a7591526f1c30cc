#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace specfact {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class SymmetryError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class DefinitenessError : public Error {
public:
    using Error::Error;
};

class PositivityError : public Error {
public:
    using Error::Error;
};

class MagnitudeError : public Error {
public:
    using Error::Error;
};

class GaugeError : public Error {
public:
    using Error::Error;
};

class InsufficientHistoryError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

/// Thrown when the detected matrix rank is not stable across the frequency
/// grid. Carries the per-node rank histogram.
class RankInstabilityError : public Error {
public:
    RankInstabilityError(const std::string& what, std::map<int, std::size_t> histogram)
        : Error(what), histogram_(std::move(histogram)) {}

    const std::map<int, std::size_t>& histogram() const { return histogram_; }

private:
    std::map<int, std::size_t> histogram_;
};

}  // namespace specfact
