#pragma once

#include <stdexcept>
#include <string>

namespace heckelab {

// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// Evaluation requested at (or within machine distance of) a pole.
struct pole_error : error {
    explicit pole_error(const std::string& msg) : error(msg) {}
};

// A series or iteration failed to converge within the active budget.
struct budget_error : error {
    explicit budget_error(const std::string& msg) : error(msg) {}
};

// A truncation tail bound cannot be certified at the requested tolerance.
struct tail_error : error {
    explicit tail_error(const std::string& msg) : error(msg) {}
};

// Adaptive quadrature exceeded its subdivision budget.
struct quadrature_error : error {
    explicit quadrature_error(const std::string& msg) : error(msg) {}
};

// Configuration parse/validation failure.
struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

struct io_error : error {
    explicit io_error(const std::string& msg) : error(msg) {}
};

} // namespace heckelab
