#pragma once

// Internal: the micro-step engines behind MachineSpec. Each core exposes a
// copyable State, next(State) naming the input it needs, and feed() to
// supply one bit; the generic driver turns that into run / enumerate.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "probinfo/machine.hpp"

namespace probinfo::detail {

enum class Need { program_bit, aux_bit, halted, undefined };

using HaltSink = std::function<void(const std::string& program, const std::string& output,
                                    const std::string& aux_read)>;

class Engine {
 public:
  virtual ~Engine() = default;
  virtual RunOutcome run(const BitString& program, const BitString& aux,
                         std::uint64_t budget) const = 0;
  /// aux == nullptr selects symbolic auxiliary input bounded by max_aux.
  virtual void explore(std::size_t max_len, std::uint64_t budget, const BitString* aux,
                       std::size_t max_aux, const HaltSink& sink) const = 0;
};

struct TableCore {
  struct Node {
    int child[2] = {-1, -1};
    int entry = -1;
  };
  struct State {
    int node = 0;
    int entry = -1;
    std::size_t aux_left = 0;
    std::string out;
    std::uint64_t steps = 0;
    bool done = false;
  };

  explicit TableCore(const std::vector<TableEntry>& entries);

  Need next(const State& s) const;
  void feed_program(State& s, char bit) const;
  void feed_aux(State& s, char bit) const;
  const std::string& output(const State& s) const { return s.out; }

  std::vector<TableEntry> entries;
  std::vector<Node> trie;
};

/// bitreg-v1: a two-register output machine.
///   00 EMIT0   01 EMIT1   100 HALT (output acc+out)
///   101 SEAL   acc += <out>, last := out, out := ""
///   1100 DUP   out := out out
///   1101 RESEAL acc += <last>
///   11100 COPY read count 1^n 0 b (c = value(1b)), append c auxiliary bits
///   11101 AUXSD read <s> from the auxiliary tape, append s
///   11110 LIB  read index 1^n 0 b (k = value(1b) - 1), append library[k]
///   11111 reserved (never halts)
/// Cost: one step per bit read plus one per bit written.
struct InterpCore {
  enum class Mode : std::uint8_t {
    opcode,
    copy_unary,
    copy_body,
    aux_bit,
    auxsd_unary,
    auxsd_body,
    lib_unary,
    lib_body,
    halted,
    undefined
  };
  struct State {
    std::string acc;
    std::string out;
    std::string last;
    std::string op;
    std::string scratch;
    std::size_t count = 0;
    std::uint64_t remaining = 0;
    std::uint64_t steps = 0;
    Mode mode = Mode::opcode;
  };

  explicit InterpCore(std::vector<BitString> library);

  Need next(const State& s) const;
  void feed_program(State& s, char bit) const;
  void feed_aux(State& s, char bit) const;
  const std::string& output(const State& s) const { return s.out; }

  std::vector<BitString> library;

 private:
  void finish_lib(State& s) const;
};

std::unique_ptr<Engine> make_table_engine(const std::vector<TableEntry>& entries);
std::unique_ptr<Engine> make_interp_engine(std::vector<BitString> library);

}  // namespace probinfo::detail
