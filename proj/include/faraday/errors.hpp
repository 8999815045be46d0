#ifndef FARADAY_ERRORS_HPP
#define FARADAY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace faraday {

/// Base class for all runtime failures raised by this library.
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

// --- physics / numerics ---

class ZeroCoupling : public SimulationError {
public:
    ZeroCoupling() : SimulationError("coupling Rabi frequency is zero") {}
};

class ZeroProbe : public SimulationError {
public:
    ZeroProbe() : SimulationError("probe Rabi component is zero") {}
};

class StepSizeUnderflow : public SimulationError {
public:
    explicit StepSizeUnderflow(const std::string& what) : SimulationError(what) {}
};

class InvalidTolerance : public SimulationError {
public:
    explicit InvalidTolerance(const std::string& what) : SimulationError(what) {}
};

class SingularGenerator : public SimulationError {
public:
    explicit SingularGenerator(const std::string& what) : SimulationError(what) {}
};

class RegimeViolation : public SimulationError {
public:
    explicit RegimeViolation(const std::string& what) : SimulationError(what) {}
};

class InvalidSliceCount : public SimulationError {
public:
    explicit InvalidSliceCount(const std::string& what) : SimulationError(what) {}
};

class FitDiverged : public SimulationError {
public:
    explicit FitDiverged(const std::string& what) : SimulationError(what) {}
};

class InsufficientData : public SimulationError {
public:
    explicit InsufficientData(const std::string& what) : SimulationError(what) {}
};

class QuadratureNonConvergent : public SimulationError {
public:
    explicit QuadratureNonConvergent(const std::string& what) : SimulationError(what) {}
};

// --- configuration / io ---

class ConfigError : public SimulationError {
public:
    explicit ConfigError(const std::string& what) : SimulationError(what) {}
};

class SchemaError : public ConfigError {
public:
    explicit SchemaError(const std::string& field, const std::string& what)
        : ConfigError("schema error at '" + field + "': " + what), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class UnknownKey : public ConfigError {
public:
    explicit UnknownKey(const std::string& key)
        : ConfigError("unknown configuration key '" + key + "'"), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

class UnitError : public ConfigError {
public:
    explicit UnitError(const std::string& what) : ConfigError(what) {}
};

class IoError : public SimulationError {
public:
    explicit IoError(const std::string& what) : SimulationError(what) {}
};

class LengthMismatch : public SimulationError {
public:
    explicit LengthMismatch(const std::string& what) : SimulationError(what) {}
};

}  // namespace faraday

#endif
