#include "machine_engine.hpp"

#include <utility>

#include "probinfo/errors.hpp"

namespace probinfo::detail {

// ---------------------------------------------------------------- table ---

TableCore::TableCore(const std::vector<TableEntry>& table) : entries(table) {
  trie.emplace_back();
  for (std::size_t e = 0; e < entries.size(); ++e) {
    int node = 0;
    const BitString& p = entries[e].program;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const int b = p.bit(i) ? 1 : 0;
      if (trie[node].child[b] < 0) {
        trie[node].child[b] = static_cast<int>(trie.size());
        trie.emplace_back();
      }
      node = trie[node].child[b];
    }
    trie[node].entry = static_cast<int>(e);
  }
}

Need TableCore::next(const State& s) const {
  if (s.done) return Need::halted;
  if (s.node < 0) return Need::undefined;
  if (s.entry >= 0) return s.aux_left > 0 ? Need::aux_bit : Need::halted;
  return Need::program_bit;
}

void TableCore::feed_program(State& s, char bit) const {
  ++s.steps;
  s.node = trie[s.node].child[bit == '1' ? 1 : 0];
  if (s.node < 0) return;
  if (const int e = trie[s.node].entry; e >= 0) {
    s.entry = e;
    s.aux_left = entries[e].aux_reads;
    s.out = entries[e].output.str();
    s.steps += s.out.size();
    if (s.aux_left == 0) s.done = true;
  }
}

void TableCore::feed_aux(State& s, char bit) const {
  s.steps += 2;
  s.out.push_back(bit);
  if (--s.aux_left == 0) s.done = true;
}

// ----------------------------------------------------------- interpreter ---

InterpCore::InterpCore(std::vector<BitString> lib) : library(std::move(lib)) {}

Need InterpCore::next(const State& s) const {
  switch (s.mode) {
    case Mode::opcode:
    case Mode::copy_unary:
    case Mode::copy_body:
    case Mode::lib_unary:
    case Mode::lib_body:
      return Need::program_bit;
    case Mode::aux_bit:
    case Mode::auxsd_unary:
    case Mode::auxsd_body:
      return Need::aux_bit;
    case Mode::halted:
      return Need::halted;
    case Mode::undefined:
      break;
  }
  return Need::undefined;
}

namespace {

void append_self_delimiting(std::string& dst, const std::string& body) {
  dst.append(body.size(), '1');
  dst.push_back('0');
  dst += body;
}

}  // namespace

void InterpCore::feed_program(State& s, char bit) const {
  ++s.steps;
  switch (s.mode) {
    case Mode::opcode: {
      s.op.push_back(bit);
      const std::string& op = s.op;
      if (op == "00" || op == "01") {
        s.out.push_back(op[1]);
        ++s.steps;
      } else if (op == "100") {
        s.steps += s.acc.size();
        s.out = s.acc + s.out;
        s.mode = Mode::halted;
      } else if (op == "101") {
        const std::size_t before = s.acc.size();
        append_self_delimiting(s.acc, s.out);
        s.steps += s.acc.size() - before;
        s.last = std::move(s.out);
        s.out.clear();
      } else if (op == "1100") {
        s.steps += s.out.size();
        s.out += std::string(s.out);
      } else if (op == "1101") {
        const std::size_t before = s.acc.size();
        append_self_delimiting(s.acc, s.last);
        s.steps += s.acc.size() - before;
      } else if (op == "11100") {
        s.mode = Mode::copy_unary;
        s.count = 0;
      } else if (op == "11101") {
        s.mode = Mode::auxsd_unary;
        s.count = 0;
      } else if (op == "11110") {
        s.mode = Mode::lib_unary;
        s.count = 0;
      } else if (op == "11111") {
        s.mode = Mode::undefined;
      } else {
        return;  // opcode still incomplete
      }
      s.op.clear();
      return;
    }
    case Mode::copy_unary:
      if (bit == '1') {
        ++s.count;
      } else if (s.count == 0) {
        s.remaining = 1;
        s.mode = Mode::aux_bit;
      } else {
        s.scratch = "1";
        s.mode = Mode::copy_body;
      }
      return;
    case Mode::copy_body:
      s.scratch.push_back(bit);
      if (s.scratch.size() == s.count + 1) {
        if (s.scratch.size() > 40) {
          s.mode = Mode::undefined;
          return;
        }
        s.remaining = 0;
        for (char c : s.scratch) s.remaining = (s.remaining << 1) | (c == '1' ? 1U : 0U);
        s.mode = Mode::aux_bit;
      }
      return;
    case Mode::lib_unary:
      if (bit == '1') {
        ++s.count;
      } else if (s.count == 0) {
        s.scratch = "1";
        finish_lib(s);
      } else {
        s.scratch = "1";
        s.mode = Mode::lib_body;
      }
      return;
    case Mode::lib_body:
      s.scratch.push_back(bit);
      if (s.scratch.size() == s.count + 1) finish_lib(s);
      return;
    default:
      s.mode = Mode::undefined;
  }
}

void InterpCore::finish_lib(State& s) const {
  std::uint64_t v = 0;
  for (char c : s.scratch) v = (v << 1) | (c == '1' ? 1U : 0U);
  const std::uint64_t k = v - 1;
  if (s.scratch.size() > 40 || k >= library.size()) {
    s.mode = Mode::undefined;
    return;
  }
  s.out += library[k].str();
  s.steps += library[k].size();
  s.mode = Mode::opcode;
}

void InterpCore::feed_aux(State& s, char bit) const {
  ++s.steps;
  switch (s.mode) {
    case Mode::aux_bit:
      s.out.push_back(bit);
      ++s.steps;
      if (--s.remaining == 0) s.mode = Mode::opcode;
      return;
    case Mode::auxsd_unary:
      if (bit == '1') {
        ++s.count;
      } else if (s.count == 0) {
        s.mode = Mode::opcode;
      } else {
        s.scratch.clear();
        s.mode = Mode::auxsd_body;
      }
      return;
    case Mode::auxsd_body:
      s.scratch.push_back(bit);
      if (s.scratch.size() == s.count) {
        s.out += s.scratch;
        s.steps += s.count;
        s.mode = Mode::opcode;
      }
      return;
    default:
      s.mode = Mode::undefined;
  }
}

// ---------------------------------------------------------------- driver ---

namespace {

template <class Core>
class GenericEngine final : public Engine {
 public:
  template <class... Args>
  explicit GenericEngine(Args&&... args) : core_(std::forward<Args>(args)...) {}

  RunOutcome run(const BitString& program, const BitString& aux,
                 std::uint64_t budget) const override {
    typename Core::State s;
    std::size_t pos = 0;
    std::size_t apos = 0;
    RunOutcome r;
    for (;;) {
      r.aux_bits_read = apos;
      r.steps_used = s.steps;
      if (s.steps > budget) {
        r.status = RunStatus::budget_exhausted;
        return r;
      }
      switch (core_.next(s)) {
        case Need::halted:
          if (pos != program.size()) {
            throw InputError("program \"" + program.str() + "\" is outside the prefix-free domain: "
                             "the machine halts after reading " + std::to_string(pos) + " of " +
                             std::to_string(program.size()) + " bits");
          }
          r.status = RunStatus::halted;
          r.output = BitString::from_trusted(core_.output(s));
          return r;
        case Need::undefined:
          r.status = RunStatus::undefined;
          return r;
        case Need::program_bit:
          if (pos == program.size()) {
            r.status = RunStatus::program_exhausted;
            return r;
          }
          core_.feed_program(s, program[pos++]);
          break;
        case Need::aux_bit:
          if (apos == aux.size()) {
            r.status = RunStatus::aux_exhausted;
            return r;
          }
          core_.feed_aux(s, aux[apos++]);
          break;
      }
    }
  }

  void explore(std::size_t max_len, std::uint64_t budget, const BitString* aux,
               std::size_t max_aux, const HaltSink& sink) const override {
    std::string prog;
    std::string aux_read;
    Walk walk{core_, max_len, budget, aux, max_aux, sink, prog, aux_read};
    walk.visit(typename Core::State{});
  }

 private:
  struct Walk {
    const Core& core;
    std::size_t max_len;
    std::uint64_t budget;
    const BitString* aux;
    std::size_t max_aux;
    const HaltSink& sink;
    std::string& prog;
    std::string& aux_read;

    void visit(typename Core::State s) {
      for (;;) {
        if (s.steps > budget) return;
        switch (core.next(s)) {
          case Need::halted:
            sink(prog, core.output(s), aux_read);
            return;
          case Need::undefined:
            return;
          case Need::program_bit: {
            if (prog.size() == max_len) return;
            typename Core::State zero = s;
            prog.push_back('0');
            core.feed_program(zero, '0');
            visit(std::move(zero));
            prog.back() = '1';
            core.feed_program(s, '1');
            visit(std::move(s));
            prog.pop_back();
            return;
          }
          case Need::aux_bit: {
            const std::size_t pos = aux_read.size();
            if (aux != nullptr) {
              if (pos == aux->size()) return;
              const char b = (*aux)[pos];
              aux_read.push_back(b);
              core.feed_aux(s, b);
              visit(std::move(s));
              aux_read.pop_back();
              return;
            }
            if (pos == max_aux) return;
            typename Core::State zero = s;
            aux_read.push_back('0');
            core.feed_aux(zero, '0');
            visit(std::move(zero));
            aux_read.back() = '1';
            core.feed_aux(s, '1');
            visit(std::move(s));
            aux_read.pop_back();
            return;
          }
        }
      }
    }
  };

  Core core_;
};

}  // namespace

std::unique_ptr<Engine> make_table_engine(const std::vector<TableEntry>& entries) {
  return std::make_unique<GenericEngine<TableCore>>(entries);
}

std::unique_ptr<Engine> make_interp_engine(std::vector<BitString> library) {
  return std::make_unique<GenericEngine<InterpCore>>(std::move(library));
}

}  // namespace probinfo::detail
