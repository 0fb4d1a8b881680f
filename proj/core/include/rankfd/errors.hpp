#pragma once

#include <stdexcept>
#include <string>

namespace rankfd {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite observations, empty samples, malformed input values.
class invalid_data_error : public error {
public:
    using error::error;
};

/// A group has fewer replicates than an estimator requires (n_i >= 2).
class insufficient_replication_error : public error {
public:
    using error::error;
};

/// Factorial layout mismatch (d != a*b, bad cell order, missing cells).
class layout_error : public error {
public:
    using error::error;
};

/// Degenerate input for a statistic (zero trace, all eigenvalues zero,
/// all observations tied).
class degenerate_error : public error {
public:
    using error::error;
};

/// Contrast matrix rows that do not sum to zero, or dimension mismatch.
class invalid_contrast_error : public error {
public:
    using error::error;
};

/// Argument outside the mathematical domain of a numeric routine.
class domain_error : public error {
public:
    using error::error;
};

/// A structural invariant failed in a way that indicates a bug rather
/// than bad input (e.g. a covariance diagonal far below zero).
class internal_consistency_error : public error {
public:
    using error::error;
};

} // namespace rankfd
