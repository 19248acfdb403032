#include "probinfo/machine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "machine_engine.hpp"
#include "probinfo/errors.hpp"

namespace probinfo {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::halted: return "halted";
    case RunStatus::budget_exhausted: return "budget-exhausted";
    case RunStatus::program_exhausted: return "program-exhausted";
    case RunStatus::aux_exhausted: return "aux-exhausted";
    case RunStatus::undefined: return "undefined";
  }
  return "unknown";
}

void check_prefix_free(std::vector<BitString> programs) {
  std::sort(programs.begin(), programs.end());
  // In lexicographic order a string that prefixes anything prefixes its successor.
  for (std::size_t i = 0; i + 1 < programs.size(); ++i) {
    if (programs[i].is_prefix_of(programs[i + 1])) {
      throw SpecError("prefix violation: \"" + programs[i].str() + "\" is a prefix of \"" +
                      programs[i + 1].str() + "\"");
    }
  }
}

MachineSpec MachineSpec::make_table(std::string name, std::vector<TableEntry> entries) {
  std::vector<BitString> programs;
  programs.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.program.size() > kHardCap) {
      throw SpecError("table program \"" + e.program.str() + "\" exceeds the hard cap of " +
                      std::to_string(kHardCap) + " bits");
    }
    programs.push_back(e.program);
  }
  check_prefix_free(std::move(programs));
  MachineSpec m;
  m.kind_ = MachineKind::table;
  m.name_ = std::move(name);
  m.table_ = std::move(entries);
  m.engine_ = detail::make_table_engine(m.table_);
  return m;
}

MachineSpec MachineSpec::make_programmatic(std::string name, std::string_view description_json) {
  ordered_json desc;
  try {
    desc = ordered_json::parse(description_json);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("programDescription is not valid JSON: ") + e.what());
  }
  if (!desc.is_object() || desc.value("dialect", "") != "bitreg-v1") {
    throw SpecError("programDescription must name dialect \"bitreg-v1\"");
  }
  std::vector<BitString> library;
  if (desc.contains("library")) {
    if (!desc["library"].is_array()) throw SpecError("programDescription.library must be an array");
    for (const auto& item : desc["library"]) {
      if (!item.is_string()) throw SpecError("library entries must be bitstrings");
      library.emplace_back(item.get<std::string>());
    }
  }
  ordered_json canonical;
  canonical["dialect"] = "bitreg-v1";
  canonical["library"] = ordered_json::array();
  for (const auto& b : library) canonical["library"].push_back(b.str());

  MachineSpec m;
  m.kind_ = MachineKind::programmatic;
  m.name_ = std::move(name);
  m.description_ = canonical.dump();
  m.library_ = library;
  m.engine_ = detail::make_interp_engine(std::move(library));
  return m;
}

MachineSpec MachineSpec::with_library(std::string name, std::vector<BitString> library) const {
  if (kind_ != MachineKind::programmatic) {
    throw SpecError("only programmatic machines can be extended with a library");
  }
  ordered_json desc;
  desc["dialect"] = "bitreg-v1";
  desc["library"] = ordered_json::array();
  for (const auto& b : library_) desc["library"].push_back(b.str());
  for (const auto& b : library) desc["library"].push_back(b.str());
  return make_programmatic(std::move(name), desc.dump());
}

RunOutcome run(const MachineSpec& machine, const BitString& program, const BitString& aux,
               std::uint64_t budget) {
  if (budget < 1) throw InputError("budget must be at least 1 step");
  if (program.size() > kHardCap) {
    throw InputError("program of " + std::to_string(program.size()) +
                     " bits exceeds the hard cap of " + std::to_string(kHardCap));
  }
  return machine.engine().run(program, aux, budget);
}

namespace {

void check_len(std::size_t max_len) {
  if (max_len > kHardCap) {
    throw InputError("maxLen " + std::to_string(max_len) + " exceeds the hard cap of " +
                     std::to_string(kHardCap));
  }
}

}  // namespace

std::vector<HaltingProgram> enumerate(const MachineSpec& machine, std::size_t max_len,
                                      std::uint64_t budget, const BitString& aux) {
  check_len(max_len);
  if (budget < 1) throw InputError("budget must be at least 1 step");
  std::vector<HaltingProgram> out;
  machine.engine().explore(max_len, budget, &aux, aux.size(),
                           [&](const std::string& p, const std::string& o, const std::string& a) {
                             out.push_back({BitString::from_trusted(p), BitString::from_trusted(o),
                                            a.size()});
                           });
  std::sort(out.begin(), out.end(), [](const HaltingProgram& a, const HaltingProgram& b) {
    return length_lex_less(a.program, b.program);
  });
  return out;
}

std::vector<RelativeHalting> enumerate_relative(const MachineSpec& machine, std::size_t max_len,
                                                std::uint64_t budget, std::size_t max_aux) {
  check_len(max_len);
  if (budget < 1) throw InputError("budget must be at least 1 step");
  std::vector<RelativeHalting> out;
  machine.engine().explore(max_len, budget, nullptr, max_aux,
                           [&](const std::string& p, const std::string& o, const std::string& a) {
                             out.push_back({BitString::from_trusted(p), BitString::from_trusted(o),
                                            BitString::from_trusted(a)});
                           });
  std::sort(out.begin(), out.end(), [](const RelativeHalting& a, const RelativeHalting& b) {
    if (a.program != b.program) return length_lex_less(a.program, b.program);
    return a.aux_read < b.aux_read;
  });
  return out;
}

namespace {

BitString json_bits(const ordered_json& v, const char* field) {
  if (!v.is_string()) throw FormatError(std::string("field ") + field + " must be a bitstring");
  return BitString(v.get<std::string>());
}

}  // namespace

MachineSpec load_machine(std::string_view document, std::size_t validate_len) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("machine document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("machine document must be a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw FormatError("missing field: kind");
  if (!doc.contains("name") || !doc["name"].is_string()) throw FormatError("missing field: name");
  const std::string kind = doc["kind"].get<std::string>();
  const std::string name = doc["name"].get<std::string>();

  if (kind == "table") {
    if (!doc.contains("table") || !doc["table"].is_array()) {
      throw FormatError("table machine needs a table array");
    }
    std::vector<TableEntry> entries;
    for (const auto& row : doc["table"]) {
      if (!row.is_object() || !row.contains("program") || !row.contains("output")) {
        throw FormatError("table rows need program and output");
      }
      TableEntry e;
      e.program = json_bits(row["program"], "program");
      e.output = json_bits(row["output"], "output");
      if (row.contains("auxReads")) {
        if (!row["auxReads"].is_number_unsigned()) throw FormatError("auxReads must be a natural");
        e.aux_reads = row["auxReads"].get<std::size_t>();
      }
      entries.push_back(std::move(e));
    }
    return MachineSpec::make_table(name, std::move(entries));
  }
  if (kind == "programmatic") {
    if (!doc.contains("programDescription")) throw FormatError("missing field: programDescription");
    const auto& d = doc["programDescription"];
    std::string text = d.is_string() ? d.get<std::string>() : d.dump();
    MachineSpec m = MachineSpec::make_programmatic(name, text);
    if (validate_len > 0) {
      check_len(validate_len);
      std::vector<BitString> programs;
      for (auto& h : enumerate(m, validate_len, kDefaultBudget, BitString{})) {
        programs.push_back(std::move(h.program));
      }
      check_prefix_free(std::move(programs));
    }
    return m;
  }
  throw FormatError("unknown machine kind \"" + kind + "\"");
}

MachineSpec load_machine_file(const std::string& path, std::size_t validate_len) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open machine file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_machine(ss.str(), validate_len);
}

std::string to_json(const MachineSpec& machine) {
  ordered_json doc;
  doc["name"] = machine.name();
  if (machine.kind() == MachineKind::table) {
    doc["kind"] = "table";
    doc["table"] = ordered_json::array();
    for (const auto& e : machine.table()) {
      ordered_json row;
      row["program"] = e.program.str();
      row["output"] = e.output.str();
      row["auxReads"] = e.aux_reads;
      doc["table"].push_back(std::move(row));
    }
  } else {
    doc["kind"] = "programmatic";
    doc["programDescription"] = ordered_json::parse(machine.program_description());
  }
  return doc.dump(2) + "\n";
}

double KraftSum::value() const { return std::ldexp(static_cast<double>(numerator), -static_cast<int>(exponent)); }

KraftSum kraft_sum(const std::vector<HaltingProgram>& programs, std::size_t max_len) {
  KraftSum k;
  k.exponent = max_len;
  for (const auto& h : programs) {
    if (h.program.size() > max_len) throw InputError("program longer than the Kraft exponent");
    k.numerator += std::uint64_t{1} << (max_len - h.program.size());
  }
  return k;
}

}  // namespace probinfo
