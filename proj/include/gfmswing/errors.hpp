#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gfmswing {

/// Base of every error raised by the library.
class SwingError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Series impedance of the circuit vanishes.
class DegenerateCircuit : public SwingError
{
  public:
    using SwingError::SwingError;
};

/// I_max must exceed I_th.
class InvalidThresholds : public SwingError
{
  public:
    using SwingError::SwingError;
};

class NoConvergence : public SwingError
{
  public:
    NoConvergence(const std::string& what, double residual, int iterations)
        : SwingError(what), residual_(residual), iterations_(iterations)
    {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

  private:
    double residual_;
    int iterations_;
};

/// The requested current level cannot be reached / is exceeded for every angle.
class CriticalAngleError : public SwingError
{
  public:
    enum class Kind { Unreachable, AlwaysExceeded };

    CriticalAngleError(Kind kind, const std::string& what) : SwingError(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

/// Apparent impedance evaluated at the cot(delta/2) pole.
class PoleAtZero : public SwingError
{
  public:
    using SwingError::SwingError;
};

class NoEquilibrium : public SwingError
{
  public:
    using SwingError::SwingError;
};

/// Raised by the integrator; carries the simulation time of the failure.
class SimulationError : public SwingError
{
  public:
    SimulationError(const std::string& what, double time) : SwingError(what), time_(time) {}

    double time() const noexcept { return time_; }

  private:
    double time_;
};

class InsufficientHorizon : public SwingError
{
  public:
    using SwingError::SwingError;
};

/// Malformed scenario text; line is 1-based (0 when unknown), field is a dotted path.
class ParseError : public SwingError
{
  public:
    ParseError(const std::string& what, std::size_t line, std::string field)
        : SwingError(what), line_(line), field_(std::move(field))
    {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

  private:
    std::size_t line_;
    std::string field_;
};

/// Well-formed but inconsistent input. Lists every violated invariant.
class ValidationError : public SwingError
{
  public:
    explicit ValidationError(std::vector<std::string> violations)
        : SwingError(join(violations)), violations_(std::move(violations))
    {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

  private:
    static std::string join(const std::vector<std::string>& items)
    {
        std::string out = "validation failed";
        for (const auto& item : items) {
            out += "; ";
            out += item;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

} // namespace gfmswing
