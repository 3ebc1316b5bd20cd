#pragma once

#include <stdexcept>
#include <string>

namespace woenet {

// Exit-code contract: 1 = validation, 2 = data, 3 = modeling.
class Error : public std::runtime_error {
public:
    Error(std::string message, int exit_code)
        : std::runtime_error(std::move(message)), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(std::string message) : Error(std::move(message), 1) {}
};

class DataError : public Error {
public:
    explicit DataError(std::string message) : Error(std::move(message), 2) {}
};

class ModelError : public Error {
public:
    explicit ModelError(std::string message) : Error(std::move(message), 3) {}
};

}  // namespace woenet
