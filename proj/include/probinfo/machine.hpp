#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "probinfo/bitstring.hpp"

namespace probinfo {

inline constexpr std::size_t kHardCap = 24;
inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

enum class MachineKind { table, programmatic };

/// One row of a table machine. When the program is read the machine
/// requests aux_reads auxiliary bits and outputs `output` followed by them.
struct TableEntry {
  BitString program;
  BitString output;
  std::size_t aux_reads = 0;
};

enum class RunStatus {
  halted,
  budget_exhausted,
  program_exhausted,  // needs more program bits than were supplied
  aux_exhausted,      // needs more auxiliary bits than were supplied
  undefined,          // entered a state that never halts
};

std::string_view to_string(RunStatus s);

struct RunOutcome {
  RunStatus status = RunStatus::undefined;
  BitString output;  // meaningful only when halted
  std::size_t aux_bits_read = 0;
  std::uint64_t steps_used = 0;
};

struct HaltingProgram {
  BitString program;
  BitString output;
  std::size_t aux_bits_read = 0;

  friend bool operator==(const HaltingProgram&, const HaltingProgram&) = default;
};

/// A halting program found with symbolic auxiliary input: it halts with
/// `output` on every auxiliary string that extends `aux_read`, and on no
/// auxiliary string that is a proper prefix of it.
struct RelativeHalting {
  BitString program;
  BitString output;
  BitString aux_read;

  friend bool operator==(const RelativeHalting&, const RelativeHalting&) = default;
};

namespace detail {
class Engine;
}

/// A validated, immutable prefix-free reference machine.
class MachineSpec {
 public:
  /// Builds and validates a table machine (programs pairwise
  /// prefix-incomparable, none longer than the hard cap).
  static MachineSpec make_table(std::string name, std::vector<TableEntry> entries);
  /// Builds the bit-register interpreter from its JSON description text,
  /// e.g. {"dialect":"bitreg-v1","library":["0110"]}.
  static MachineSpec make_programmatic(std::string name, std::string_view description_json);

  MachineKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<TableEntry>& table() const noexcept { return table_; }
  /// Canonical JSON text of the interpreter description (programmatic only).
  const std::string& program_description() const noexcept { return description_; }
  /// Constant strings the interpreter's LIB instruction can emit.
  const std::vector<BitString>& library() const noexcept { return library_; }

  /// Copy of a programmatic machine whose LIB instruction indexes `library`.
  MachineSpec with_library(std::string name, std::vector<BitString> library) const;

  const detail::Engine& engine() const noexcept { return *engine_; }

 private:
  MachineSpec() = default;

  MachineKind kind_ = MachineKind::table;
  std::string name_;
  std::vector<TableEntry> table_;
  std::string description_;
  std::vector<BitString> library_;
  std::shared_ptr<const detail::Engine> engine_;
};

/// Executes `program` as a self-delimiting input. Throws InputError when
/// budget is 0, when the program exceeds the hard cap, or when the machine
/// halts before consuming every supplied program bit.
RunOutcome run(const MachineSpec& machine, const BitString& program, const BitString& aux,
               std::uint64_t budget = kDefaultBudget);

/// Every program of length <= max_len that halts within budget on `aux`,
/// sorted by (length, lex) of the program.
std::vector<HaltingProgram> enumerate(const MachineSpec& machine, std::size_t max_len,
                                      std::uint64_t budget, const BitString& aux);

/// Programs of length <= max_len that halt within budget after reading at
/// most max_aux auxiliary bits, with the auxiliary prefix each one read.
/// Restricting to entries whose aux_read is a prefix of some y with
/// |y| <= max_aux reproduces enumerate(machine, max_len, budget, y).
std::vector<RelativeHalting> enumerate_relative(const MachineSpec& machine, std::size_t max_len,
                                                std::uint64_t budget, std::size_t max_aux);

/// Parses and validates a machine document. Table machines are checked
/// exhaustively; programmatic machines over their halting set (empty aux)
/// up to validate_len. Throws FormatError or SpecError.
MachineSpec load_machine(std::string_view document, std::size_t validate_len = kHardCap);
MachineSpec load_machine_file(const std::string& path, std::size_t validate_len = kHardCap);
/// Canonical serialization; load_machine(to_json(m)) re-serializes identically.
std::string to_json(const MachineSpec& machine);

/// Sum of 2^-|p| as an exact fraction num / 2^max_len.
struct KraftSum {
  std::uint64_t numerator = 0;
  std::size_t exponent = 0;
  double value() const;
};
KraftSum kraft_sum(const std::vector<HaltingProgram>& programs, std::size_t max_len);

/// Throws SpecError naming the first comparable pair (sorted input not required).
void check_prefix_free(std::vector<BitString> programs);

}  // namespace probinfo
