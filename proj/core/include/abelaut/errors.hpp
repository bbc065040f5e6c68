#pragma once

#include <stdexcept>
#include <string>

namespace abelaut {

struct SingularMatrix : std::runtime_error {
  explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct SearchSpaceTooLarge : std::runtime_error {
  explicit SearchSpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidTat : std::runtime_error {
  explicit InvalidTat(const std::string& what) : std::runtime_error(what) {}
};

struct AmalgamObstruction : std::runtime_error {
  explicit AmalgamObstruction(const std::string& what) : std::runtime_error(what) {}
};

struct BadGamma : std::runtime_error {
  explicit BadGamma(const std::string& what) : std::runtime_error(what) {}
};

struct NotBijective : std::runtime_error {
  explicit NotBijective(const std::string& what) : std::runtime_error(what) {}
};

struct Inconclusive : std::runtime_error {
  explicit Inconclusive(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace abelaut
