#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mmc {

// Error taxonomy mirrors the CLI exit codes: input problems (bad files, schema,
// out-of-range parameters, exceeded size guards), infeasible problem statements,
// and invariant violations that indicate a bug in the solver itself.
enum class ErrorKind { Input, Infeasible, Invariant };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void throw_input(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::Input, code, msg);
}

[[noreturn]] inline void throw_infeasible(const std::string& msg) {
  throw Error(ErrorKind::Infeasible, "infeasible", msg);
}

[[noreturn]] inline void throw_invariant(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::Invariant, code, msg);
}

}  // namespace mmc
