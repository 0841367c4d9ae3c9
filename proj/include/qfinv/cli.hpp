#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qfinv/field.hpp"
#include "qfinv/oracle.hpp"
#include "qfinv/tower.hpp"

namespace qfinv::cli {

/// Bad command line; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldInfo {
  FieldDescriptor field;
  friend bool operator==(const FieldInfo&, const FieldInfo&) = default;
};

enum class Check { Isotropic, Universal, Au, Radical };

/// With a form, answers a question about that form. Without one, `Au`
/// enumerates the tower's AU set and `Radical` lists its Kaplansky radical.
struct FormCheck {
  Tower tower{3, 0};
  std::optional<ClassForm> form;
  Check check = Check::Isotropic;
  std::optional<unsigned> max_dim;
  unsigned max_r = 2;
  friend bool operator==(const FormCheck&, const FormCheck&) = default;
};

struct Attainable {
  unsigned n = 1;
  BaseClass base;
  friend bool operator==(const Attainable&, const Attainable&) = default;
};

struct PossibleM {
  unsigned n = 1;
  BaseClass base;
  friend bool operator==(const PossibleM&, const PossibleM&) = default;
};

struct LayerExample {
  unsigned n = 1;
  unsigned j = 1;
  BaseClass base;
  friend bool operator==(const LayerExample&, const LayerExample&) = default;
};

struct Verify {
  Tower tower{3, 1};
  unsigned dim_lo = 1;
  unsigned dim_hi = 3;
  ValidationMode mode;
  int degree_bound = 1;
  friend bool operator==(const Verify&, const Verify&) = default;
};

struct ExportGraph {
  FieldDescriptor field;
  friend bool operator==(const ExportGraph&, const ExportGraph&) = default;
};

struct Command {
  std::variant<FieldInfo, FormCheck, Attainable, PossibleM, LayerExample, Verify, ExportGraph> body;
  /// Human-readable output instead of JSON.
  bool table = false;
  friend bool operator==(const Command&, const Command&) = default;
};

/// Parses arguments after the program name. Throws UsageError, ParseError
/// or InvalidDescriptor. A leading '@' on a descriptor reads it from a file.
Command parse_command(const std::vector<std::string>& args);

/// Canonical argument list; parse_command(to_args(c)) == c.
std::vector<std::string> to_args(const Command& c);

/// Executes a parsed command. Returns 0 on success, 1 on a domain error.
int run(const Command& c, std::ostream& out, std::ostream& err);

/// Full entry point: parse, run, map failures to exit codes 0/1/2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfinv::cli
