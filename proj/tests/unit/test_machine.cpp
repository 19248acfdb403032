#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "probinfo/errors.hpp"
#include "probinfo/machine.hpp"

using namespace probinfo;
using probinfo::testing::bits;
using probinfo::testing::load_fixture;

namespace {

// Hand assembler for the interpreter, written against the opcode table.
std::string asm_ops(std::initializer_list<std::string> ops) {
  static const std::map<std::string, std::string> code = {
      {"E0", "00"},     {"E1", "01"},     {"HALT", "100"},  {"SEAL", "101"},
      {"DUP", "1100"},  {"RESEAL", "1101"}, {"AUXSD", "11101"},
  };
  // LIB k: index 1^n 0 b with value(1b) - 1 = k; COPY c: count 1^n 0 b with value(1b) = c
  auto counted = [](std::uint64_t v) {
    std::string b = binary_numeral(v).str().substr(1);
    return std::string(b.size(), '1') + "0" + b;
  };
  std::string out;
  for (const auto& op : ops) {
    if (op.rfind("LIB", 0) == 0) {
      out += "11110" + counted(std::stoull(op.substr(3)) + 1);
    } else if (op.rfind("COPY", 0) == 0) {
      out += "11100" + counted(std::stoull(op.substr(4)));
    } else {
      out += code.at(op);
    }
  }
  return out;
}

MachineSpec bitreg(std::vector<std::string> lib = {}) {
  std::string desc = R"({"dialect":"bitreg-v1","library":[)";
  for (std::size_t i = 0; i < lib.size(); ++i) desc += (i ? ",\"" : "\"") + lib[i] + "\"";
  desc += "]}";
  return MachineSpec::make_programmatic("bitreg", desc);
}

}  // namespace

TEST_CASE("M0 runs") {
  auto m0 = load_fixture("m0.json");
  auto r = run(m0, bits("0"), bits(""));
  CHECK(r.status == RunStatus::halted);
  CHECK(r.output.str() == "");
  CHECK(r.aux_bits_read == 0);
  auto r2 = run(m0, bits("10"), bits(""));
  CHECK(r2.status == RunStatus::halted);
  CHECK(r2.output.str() == "0");
  CHECK_THROWS_AS(run(m0, bits("01"), bits("")), InputError);
  CHECK_THROWS_AS(run(m0, bits("0"), bits(""), 0), InputError);
  CHECK_THROWS_AS(run(m0, BitString::repeat('1', 25), bits("")), InputError);
  CHECK(run(m0, bits("11"), bits("")).status == RunStatus::program_exhausted);
}

TEST_CASE("M0 enumeration and Kraft sum") {
  auto m0 = load_fixture("m0.json");
  auto e = enumerate(m0, 3, kDefaultBudget, bits(""));
  std::vector<HaltingProgram> expect = {
      {bits("0"), bits(""), 0}, {bits("10"), bits("0"), 0}, {bits("110"), bits("1"), 0}};
  CHECK(e == expect);
  CHECK(enumerate(m0, 0, kDefaultBudget, bits("")).empty());
  auto k = kraft_sum(enumerate(m0, 20, kDefaultBudget, bits("")), 20);
  CHECK(k.exponent == 20);
  CHECK(k.numerator == (1ULL << 20) - 1);
}

TEST_CASE("load rejects comparable programs and names them") {
  const char* bad = R"({"kind":"table","name":"bad","table":[
      {"program":"0","output":"","auxReads":0},{"program":"01","output":"1","auxReads":0}]})";
  try {
    load_machine(bad);
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    std::string msg = e.what();
    CHECK(msg.find("\"0\"") != std::string::npos);
    CHECK(msg.find("\"01\"") != std::string::npos);
  }
  CHECK_THROWS_AS(load_machine("{"), FormatError);
  CHECK_THROWS_AS(load_machine(R"({"kind":"table","name":"x","table":[{"program":"2","output":""}]})"),
                  FormatError);
  CHECK_THROWS_AS(
      MachineSpec::make_programmatic("x", R"({"dialect":"stack-v9"})"), SpecError);
  CHECK_NOTHROW(load_machine(R"({"kind":"table","name":"ok","table":[
      {"program":"0","output":""},{"program":"10","output":"0"}]})"));
}

TEST_CASE("serialization round-trips") {
  for (const char* f : {"m0.json", "m1.json", "bitreg.json"}) {
    auto m = load_fixture(f);
    auto text = to_json(m);
    auto again = load_machine(text, 14);
    CHECK(to_json(again) == text);
    CHECK(enumerate(again, 12, kDefaultBudget, bits("01")) ==
          enumerate(m, 12, kDefaultBudget, bits("01")));
  }
}

TEST_CASE("M1 reads auxiliary bits and echoes them") {
  auto m1 = load_fixture("m1.json");
  CHECK(run(m1, bits("10"), bits("")).status == RunStatus::aux_exhausted);
  auto r = run(m1, bits("10"), bits("1"));
  CHECK(r.status == RunStatus::halted);
  CHECK(r.output.str() == "1");
  CHECK(r.aux_bits_read == 1);
  auto r2 = run(m1, bits("110"), bits("011"));
  CHECK(r2.output.str() == "01");
  CHECK(r2.aux_bits_read == 2);
}

TEST_CASE("interpreter opcodes") {
  auto m = bitreg({"0110", ""});
  auto out = [&](std::initializer_list<std::string> ops, const char* aux = "") {
    auto r = run(m, BitString(asm_ops(ops)), BitString(aux));
    REQUIRE(r.status == RunStatus::halted);
    return r.output.str();
  };
  CHECK(out({"HALT"}) == "");
  CHECK(out({"E0", "E1", "E1", "HALT"}) == "011");
  CHECK(out({"E1", "E0", "DUP", "HALT"}) == "1010");
  CHECK(out({"E1", "SEAL", "E0", "HALT"}) == "1010");
  CHECK(out({"E1", "SEAL", "RESEAL", "HALT"}) == "101101");
  CHECK(out({"COPY1", "COPY1", "HALT"}, "10") == "10");
  CHECK(out({"COPY3", "HALT"}, "1101") == "110");
  CHECK(out({"E0", "COPY5", "HALT"}, "10011") == "010011");
  CHECK(out({"AUXSD", "HALT"}, "11001") == "01");
  CHECK(out({"LIB0", "HALT"}) == "0110");
  CHECK(out({"E1", "LIB1", "HALT"}) == "1");
  CHECK(run(m, BitString(asm_ops({"LIB2", "HALT"})), bits("")).status == RunStatus::undefined);
  CHECK(run(m, bits("11111"), bits("")).status == RunStatus::undefined);
  CHECK(run(m, BitString(asm_ops({"COPY2", "HALT"})), bits("1")).status == RunStatus::aux_exhausted);
  CHECK(run(m, BitString(asm_ops({"E1", "E1"})), bits("")).status == RunStatus::program_exhausted);
  CHECK_THROWS_AS(run(m, BitString(asm_ops({"HALT", "E1"})), bits("")), InputError);
}

TEST_CASE("interpreter step accounting") {
  auto m = bitreg();
  auto p = BitString(asm_ops({"E1", "E1", "DUP", "HALT"}));
  auto r = run(m, p, bits(""));
  REQUIRE(r.status == RunStatus::halted);
  CHECK(r.steps_used == p.size() + 4);
  CHECK(run(m, p, bits(""), r.steps_used - 1).status == RunStatus::budget_exhausted);
  CHECK(run(m, p, bits(""), r.steps_used).status == RunStatus::halted);
}

TEST_CASE("every shipped machine is prefix-free with Kraft sum at most one") {
  for (const char* f : {"m0.json", "m1.json", "bitreg.json"}) {
    auto m = load_fixture(f);
    for (const char* aux : {"", "0", "1101"}) {
      auto e = enumerate(m, 18, kDefaultBudget, BitString(aux));
      std::vector<BitString> progs;
      for (const auto& h : e) progs.push_back(h.program);
      CHECK_NOTHROW(check_prefix_free(progs));
      auto k = kraft_sum(e, 18);
      CHECK(k.numerator <= (1ULL << 18));
    }
  }
}

TEST_CASE("enumeration agrees with single runs") {
  auto m = load_fixture("bitreg.json");
  auto aux = bits("0110");
  auto e = enumerate(m, 12, kDefaultBudget, aux);
  std::set<BitString> halting;
  for (const auto& h : e) {
    halting.insert(h.program);
    auto r = run(m, h.program, aux);
    REQUIRE(r.status == RunStatus::halted);
    CHECK(r.output == h.output);
    CHECK(r.aux_bits_read == h.aux_bits_read);
    CHECK(h.aux_bits_read <= aux.size());
  }
  for (std::size_t n = 0; n <= 10; ++n) {
    for (const auto& p : strings_of_length(n)) {
      if (halting.count(p)) continue;
      RunStatus st = RunStatus::undefined;
      try {
        st = run(m, p, aux).status;
      } catch (const InputError&) {
        // halts on a proper prefix
      }
      CHECK(st != RunStatus::halted);
    }
  }
  CHECK(std::is_sorted(e.begin(), e.end(),
                       [](const auto& a, const auto& b) { return length_lex_less(a.program, b.program); }));
}

TEST_CASE("budget monotonicity") {
  auto m = load_fixture("bitreg.json");
  std::vector<std::uint64_t> budgets = {4, 8, 16, 32, 64, kDefaultBudget};
  std::map<BitString, BitString> prev;
  for (auto t : budgets) {
    auto e = enumerate(m, 14, t, bits("01"));
    std::map<BitString, BitString> now;
    for (const auto& h : e) now[h.program] = h.output;
    for (const auto& [p, o] : prev) {
      REQUIRE(now.count(p));
      CHECK(now[p] == o);
    }
    prev = std::move(now);
  }
}

TEST_CASE("relative enumeration reproduces concrete enumeration") {
  auto m = load_fixture("bitreg.json");
  const std::size_t L = 13, max_aux = 4;
  auto rel = enumerate_relative(m, L, kDefaultBudget, max_aux);
  for (std::size_t n = 0; n <= max_aux; ++n) {
    for (const auto& y : strings_of_length(n)) {
      std::vector<HaltingProgram> filtered;
      for (const auto& r : rel) {
        if (r.aux_read.is_prefix_of(y)) filtered.push_back({r.program, r.output, r.aux_read.size()});
      }
      std::sort(filtered.begin(), filtered.end(),
                [](const auto& a, const auto& b) { return length_lex_less(a.program, b.program); });
      CHECK(filtered == enumerate(m, L, kDefaultBudget, y));
    }
  }
}

TEST_CASE("enumeration is deterministic") {
  auto m = load_fixture("bitreg.json");
  CHECK(enumerate(m, 15, kDefaultBudget, bits("1")) == enumerate(m, 15, kDefaultBudget, bits("1")));
  CHECK(enumerate_relative(m, 12, kDefaultBudget, 3) == enumerate_relative(m, 12, kDefaultBudget, 3));
}

TEST_CASE("random programs: runs agree across budgets once halted") {
  auto m = load_fixture("bitreg.json");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string p(1 + rng() % 16, '0');
    for (char& c : p) c = (rng() & 1U) ? '1' : '0';
    RunOutcome small, big;
    try {
      small = run(m, BitString(p), bits("1011"), 32);
      big = run(m, BitString(p), bits("1011"));
    } catch (const InputError&) {
      continue;
    }
    if (small.status == RunStatus::halted) {
      CHECK(big.status == RunStatus::halted);
      CHECK(big.output == small.output);
    }
  }
}
