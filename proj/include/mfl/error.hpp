#pragma once
#include <stdexcept>
#include <string>

namespace mfl {

// One exception type for the whole library; `kind` maps onto process exit
// codes at the CLI boundary (domain -> 1, budget -> 2, usage -> 64).
enum class ErrorKind { domain, budget, usage, internal };

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail_domain(const std::string& msg) { throw Error(ErrorKind::domain, msg); }
[[noreturn]] inline void fail_budget(const std::string& msg) { throw Error(ErrorKind::budget, msg); }
[[noreturn]] inline void fail_usage(const std::string& msg) { throw Error(ErrorKind::usage, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(ErrorKind::internal, msg); }

}  // namespace mfl
