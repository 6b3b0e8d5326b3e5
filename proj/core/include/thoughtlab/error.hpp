#pragma once

#include <stdexcept>
#include <string>

namespace thoughtlab {

// Process exit codes used by the CLI. Library errors carry the code they
// map to so main() can translate uniformly.
enum class ExitCode : int {
    ok = 0,
    config = 2,
    io = 3,
    contract = 4,
    training = 5,
};

class Error : public std::runtime_error {
  public:
    Error(std::string msg, ExitCode code)
        : std::runtime_error(std::move(msg)), code_(code) {}
    ExitCode exit_code() const { return code_; }

  private:
    ExitCode code_;
};

struct ShapeError : Error {
    explicit ShapeError(std::string msg) : Error(std::move(msg), ExitCode::contract) {}
};
struct NumericError : Error {
    explicit NumericError(std::string msg) : Error(std::move(msg), ExitCode::contract) {}
};
struct IndexError : Error {
    explicit IndexError(std::string msg) : Error(std::move(msg), ExitCode::contract) {}
};
struct ContractError : Error {
    explicit ContractError(std::string msg) : Error(std::move(msg), ExitCode::contract) {}
};
// Input longer than the model's context window.
struct ContextError : Error {
    explicit ContextError(std::string msg) : Error(std::move(msg), ExitCode::contract) {}
};
// Unrecognized or malformed file container (wrong magic / version).
struct FormatError : Error {
    explicit FormatError(std::string msg) : Error(std::move(msg), ExitCode::contract) {}
};
// Recognized container with corrupted or truncated contents.
struct IntegrityError : Error {
    explicit IntegrityError(std::string msg) : Error(std::move(msg), ExitCode::contract) {}
};
struct VocabularyError : Error {
    explicit VocabularyError(std::string msg) : Error(std::move(msg), ExitCode::contract) {}
};
struct GenerationError : Error {
    explicit GenerationError(std::string msg) : Error(std::move(msg), ExitCode::contract) {}
};
struct ConfigError : Error {
    explicit ConfigError(std::string msg) : Error(std::move(msg), ExitCode::config) {}
};
struct IoError : Error {
    explicit IoError(std::string msg) : Error(std::move(msg), ExitCode::io) {}
};
struct TrainingError : Error {
    explicit TrainingError(std::string msg) : Error(std::move(msg), ExitCode::training) {}
};

}  // namespace thoughtlab
