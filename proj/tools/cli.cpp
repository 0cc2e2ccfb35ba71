#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "modalkit/io.hpp"
#include "modalkit/mqt.hpp"
#include "modalkit/nosignal.hpp"
#include "modalkit/scenarios.hpp"
#include "modalkit/verifiers.hpp"

namespace modalkit::cli {

namespace {

using io::Json;

struct Outcome {
  std::string body;
  int code = kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::int64_t enumeration_cap() {
  if (const char* env = std::getenv("MODALKIT_ENUM_CAP")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const auto v = std::stoll(s, &used);
      if (used == s.size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("MODALKIT_ENUM_CAP must be a positive integer");
  }
  return EnumerationLimits::kDefaultCap;
}

// The composite state under study: the singlet, or a user-supplied state.
struct Subject {
  State state;
  std::vector<Measurement> measurements;
  bool is_singlet;
};

Subject load_subject(const RunConfig& cfg) {
  if (!cfg.input) {
    return Subject{singlet(cfg.p), mobit_bases(cfg.p).all(), true};
  }
  State s = io::state_from_json(io::parse_document(read_file(*cfg.input)));
  if (s.dim() != 4) throw ParseError("$.dim: expected a two-mobit state of dimension 4");
  return Subject{s, mobit_bases(s.field().modulus()).all(), false};
}

// Impossible exactly where the two effects coincide projectively.
bool has_singlet_structure(const PossibilityTable& t, std::span<const Measurement> ms) {
  std::vector<Effect> effects;
  for (const auto& m : ms) effects.insert(effects.end(), m.effects().begin(), m.effects().end());
  if (t.n_rows() != effects.size() || t.n_cols() != effects.size()) return false;
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    for (std::size_t c = 0; c < t.n_cols(); ++c) {
      if (t.at(r, c) == (effects[r] == effects[c])) return false;
    }
  }
  return count_impossible(t) == 12;
}

std::string possibility_csv(const PossibilityTable& t) {
  std::ostringstream os;
  os << "measurement,outcome";
  for (std::size_t c = 0; c < t.n_cols(); ++c) {
    const auto id = t.cell_id(0, c);
    os << "," << csv_escape(id.col_measurement + "2" + id.col_outcome);
  }
  os << "\n";
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    const auto id = t.cell_id(r, 0);
    os << csv_escape(id.row_measurement + "1") << "," << csv_escape(id.row_outcome);
    for (std::size_t c = 0; c < t.n_cols(); ++c) os << "," << (t.at(r, c) ? "#" : "0");
    os << "\n";
  }
  return os.str();
}

Outcome cmd_table(const RunConfig& cfg) {
  const auto subject = load_subject(cfg);
  const auto table = possibility_table(subject.state, subject.measurements, subject.measurements);
  Outcome result;
  if (subject.is_singlet && !has_singlet_structure(table, subject.measurements)) {
    result.code = kMismatch;
  }
  switch (cfg.format) {
    case Format::Text:
      result.body = render_possibility(table);
      result.body += std::to_string(count_impossible(table)) + " impossible cells of " +
                     std::to_string(table.size()) + "\n";
      break;
    case Format::Json: {
      Json j{{"p", subject.state.field().modulus()},
             {"state", io::to_json(subject.state)},
             {"impossible", count_impossible(table)},
             {"table", io::to_json(table)}};
      result.body = dump(j);
      break;
    }
    case Format::Csv:
      result.body = possibility_csv(table);
      break;
  }
  if (result.code == kMismatch) result.body += "MISMATCH: singlet table lacks the expected structure\n";
  return result;
}

Outcome cmd_coloring(const RunConfig& cfg) {
  const bool builtin = !cfg.input;
  const ColoringProblem problem =
      builtin ? mobit_triangle()
              : io::coloring_problem_from_json(io::parse_document(read_file(*cfg.input)));
  const auto search = find_colorings(problem);
  const auto witness = coloring_parity_certificate(problem);

  Outcome result;
  if ((builtin && !search.colorings.empty()) || (witness && !search.colorings.empty())) {
    result.code = kMismatch;
  }
  for (const auto& c : search.colorings) {
    if (!is_valid_coloring(problem, c)) result.code = kMismatch;
  }

  switch (cfg.format) {
    case Format::Text: {
      std::ostringstream os;
      os << "instance: " << problem.vertices().size() << " vertices, " << problem.edges().size()
         << " edges, " << problem.green_count() << " green per edge\n";
      if (search.colorings.empty()) {
        os << "no valid coloring among " << search.candidate_count() << " candidates"
           << (search.exhaustive ? " (exhaustive)" : " (backtracking)") << "\n";
      } else {
        os << search.colorings.size() << " valid colorings among " << search.candidate_count()
           << " candidates\n";
        for (const auto& c : search.colorings) {
          os << "  green = {";
          for (std::size_t i = 0; i < c.green.size(); ++i) {
            os << (i ? ", " : "") << problem.vertices()[c.green[i]];
          }
          os << "}\n";
        }
      }
      if (witness) {
        os << "parity certificate: " << witness->explanation() << "\n";
      } else {
        os << "parity certificate: none\n";
      }
      result.body = os.str();
      break;
    }
    case Format::Json: {
      Json j{{"problem", io::to_json(problem)}, {"result", io::to_json(problem, search)}};
      result.body = dump(j);
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "coloring,green\n";
      for (std::size_t k = 0; k < search.colorings.size(); ++k) {
        std::string green;
        for (auto v : search.colorings[k].green) {
          green += (green.empty() ? "" : " ") + problem.vertices()[v];
        }
        os << k << "," << csv_escape(green) << "\n";
      }
      result.body = os.str();
      break;
    }
  }
  if (result.code == kMismatch) result.body += "MISMATCH: coloring result contradicts expectations\n";
  return result;
}

Outcome cmd_localmodels(const RunConfig& cfg) {
  const auto subject = load_subject(cfg);
  const auto table = possibility_table(subject.state, subject.measurements, subject.measurements);
  const auto search = find_local_models(table);
  Outcome result;
  if (subject.is_singlet && !search.models.empty()) result.code = kMismatch;
  for (const auto& m : search.models) {
    if (!is_consistent(table, m)) result.code = kMismatch;
  }
  const std::string verdict = search.models.empty()
                                  ? "outcomes cannot be predetermined by local response functions"
                                  : "local predetermined outcomes exist";
  switch (cfg.format) {
    case Format::Text: {
      std::ostringstream os;
      os << search.models.size() << " of " << search.candidates.str()
         << " local deterministic models consistent\n";
      for (const auto& m : search.models) os << "  " << describe(table, m) << "\n";
      os << "verdict: " << verdict << "\n";
      result.body = os.str();
      break;
    }
    case Format::Json: {
      Json models = Json::array();
      for (const auto& m : search.models) models.push_back(io::to_json(table, m));
      Json j{{"p", subject.state.field().modulus()},
             {"candidates", search.candidates.str()},
             {"consistent", search.models.size()},
             {"verdict", search.models.empty() ? "not_predetermined" : "local_models_exist"},
             {"models", std::move(models)}};
      result.body = dump(j);
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "model";
      for (const auto& h : table.row_headers()) os << "," << csv_escape(h.label + "1");
      for (const auto& h : table.col_headers()) os << "," << csv_escape(h.label + "2");
      os << "\n";
      for (std::size_t k = 0; k < search.models.size(); ++k) {
        os << k;
        const auto& m = search.models[k];
        for (std::size_t a = 0; a < m.f1.size(); ++a) {
          os << "," << csv_escape(table.row_headers()[a].outcomes[m.f1[a]]);
        }
        for (std::size_t b = 0; b < m.f2.size(); ++b) {
          os << "," << csv_escape(table.col_headers()[b].outcomes[m.f2[b]]);
        }
        os << "\n";
      }
      result.body = os.str();
      break;
    }
  }
  if (result.code == kMismatch) result.body += "MISMATCH: local model search contradicts expectations\n";
  return result;
}

struct PrReport {
  bool found = false;
  std::array<std::string, 2> rows;
  std::array<std::string, 2> cols;
  Rational chsh;
};

// First 2x2 selection (in label order) reaching |CHSH| = 4, else the largest value seen.
PrReport find_pr_box(const ProbabilityTable& t) {
  PrReport best;
  const auto& rh = t.row_headers();
  const auto& ch = t.col_headers();
  for (std::size_t i = 0; i < rh.size(); ++i) {
    for (std::size_t j = i + 1; j < rh.size(); ++j) {
      for (std::size_t k = 0; k < ch.size(); ++k) {
        for (std::size_t l = k + 1; l < ch.size(); ++l) {
          std::array<std::string, 2> rows{rh[i].label, rh[j].label};
          std::array<std::string, 2> cols{ch[k].label, ch[l].label};
          Rational v;
          try {
            v = max_chsh(t, rows, cols);
          } catch (const IncompleteBlock&) {
            continue;
          }
          if (!best.found && (v > best.chsh || best.rows[0].empty())) {
            best.rows = rows;
            best.cols = cols;
            best.chsh = v;
            best.found = v == Rational(4);
          }
        }
      }
    }
  }
  return best;
}

Outcome cmd_nosignal(const RunConfig& cfg) {
  const auto subject = load_subject(cfg);
  const auto table = possibility_table(subject.state, subject.measurements, subject.measurements);
  const auto system = build_system(table);
  const auto space = solve(system);
  const auto verdict = requirement_iv_verdict(system, space);

  std::optional<ProbabilityTable> relaxed;
  std::string relaxed_note;
  try {
    relaxed = relaxed_unique_table(system, space, verdict.witnesses);
  } catch (const NotUnique& e) {
    relaxed_note = e.what();
  } catch (const Infeasible& e) {
    relaxed_note = e.what();
  }
  const ProbabilityTable* pr_subject = relaxed ? &*relaxed : (verdict.example ? &*verdict.example : nullptr);
  PrReport pr;
  if (pr_subject) pr = find_pr_box(*pr_subject);

  std::optional<SymbolicTable> symbolic;
  if (cfg.symbolic || cfg.format != Format::Text) {
    const auto anchors = mobit_anchors();
    try {
      symbolic = symbolic_cells(system, space, anchors);
    } catch (const DegenerateAnchors&) {
      // Fall back to the solver's own free parameters t1..tk.
      SymbolicTable t{{}, JointTable<SymbolicCell>(table.row_headers(), table.col_headers(), SymbolicCell{})};
      for (std::size_t k = 0; k < space.dimension(); ++k) t.parameter_names.push_back("t" + std::to_string(k + 1));
      for (std::size_t i = 0; i < space.ambient_dim(); ++i) {
        t.cells.set(i / t.cells.n_cols(), i % t.cells.n_cols(), cell_form(space, i));
      }
      symbolic = std::move(t);
    }
  }

  Outcome result;
  if (subject.is_singlet &&
      (space.dimension() != 3 || verdict.satisfiable || verdict.witnesses.size() != 6 || !relaxed ||
       !check_requirements(*relaxed, &table).ok() || !pr.found || pr.chsh != Rational(4))) {
    result.code = kMismatch;
  }

  std::ostringstream summary;
  summary << "dimension " << space.dimension() << "; Requirement IV: "
          << (verdict.satisfiable ? std::string("SATISFIED")
                                  : "VIOLATED (" + std::to_string(verdict.witnesses.size()) + " cells)")
          << "; PR box: " << (pr.found ? "YES" : "NO") << ", CHSH = " << pr.chsh.to_string();

  switch (cfg.format) {
    case Format::Text: {
      std::ostringstream os;
      os << "variables " << system.variable_count() << "; equations " << system.equation_count() << " ("
         << system.normalization_count << " normalization, " << system.marginal_count << " marginal, "
         << system.zero_count << " zero); rank " << system.rank() << "\n";
      os << "dimension " << space.dimension() << "\n";
      if (symbolic) {
        os << "\nsolution family (parameters:";
        for (const auto& n : symbolic->parameter_names) os << " " << n;
        os << ")\n" << render_symbolic(*symbolic);
      }
      os << "\nforced-zero possible cells: " << verdict.witnesses.size() << "\n";
      for (const auto& c : verdict.witnesses) os << "  " << c.to_string() << "\n";
      os << "Requirement IV: " << (verdict.satisfiable ? "SATISFIED" : "VIOLATED") << "\n";
      if (relaxed) {
        os << "\nunique table with the forced cells set to zero\n" << render_probability(*relaxed);
      } else {
        os << "\nforced cells leave the table undetermined: " << relaxed_note << "\n";
        if (verdict.example) os << "\nstrictly positive example\n" << render_probability(*verdict.example);
      }
      if (pr_subject) {
        os << "\nCHSH on {" << pr.rows[0] << "1," << pr.rows[1] << "1}x{" << pr.cols[0] << "2," << pr.cols[1]
           << "2} = " << pr.chsh.to_string() << (pr.found ? " (PR box)" : "") << "\n";
      }
      os << "\n" << summary.str() << "\n";
      result.body = os.str();
      break;
    }
    case Format::Json: {
      Json witnesses = Json::array();
      for (const auto& c : verdict.witnesses) witnesses.push_back(io::to_json(c));
      Json j{{"verdict", verdict.satisfiable ? "satisfiable" : "violated"},
             {"witnesses", std::move(witnesses)},
             {"dimension", space.dimension()},
             {"p", subject.state.field().modulus()},
             {"equations",
              Json{{"variables", system.variable_count()},
                   {"normalization", system.normalization_count},
                   {"marginal", system.marginal_count},
                   {"zero", system.zero_count},
                   {"rank", system.rank()}}}};
      if (symbolic) j["symbolic"] = io::to_json(*symbolic);
      j["relaxed_table"] = relaxed ? io::to_json(*relaxed) : Json(nullptr);
      j["example_table"] = verdict.example ? io::to_json(*verdict.example) : Json(nullptr);
      j["pr_box"] = pr_subject ? Json{{"rows", pr.rows}, {"cols", pr.cols}, {"chsh", pr.chsh.to_string()},
                                      {"is_pr_box", pr.found}}
                               : Json(nullptr);
      result.body = dump(j);
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "row_measurement,row_outcome,col_measurement,col_outcome,possible,expression,forced_zero,relaxed\n";
      for (std::size_t k = 0; k < table.size(); ++k) {
        const auto& id = system.cells[k];
        const bool forced = std::find(verdict.witnesses.begin(), verdict.witnesses.end(), id) != verdict.witnesses.end();
        os << csv_escape(id.row_measurement) << "," << csv_escape(id.row_outcome) << ","
           << csv_escape(id.col_measurement) << "," << csv_escape(id.col_outcome) << ","
           << (table.flat(k) ? 1 : 0) << ","
           << csv_escape(symbolic->cells.flat(k).to_string(symbolic->parameter_names)) << ","
           << (forced ? 1 : 0) << "," << (relaxed ? relaxed->flat(k).to_string() : "") << "\n";
      }
      result.body = os.str();
      break;
    }
  }
  if (result.code == kMismatch) result.body += "MISMATCH: no-signaling analysis contradicts expectations\n";
  return result;
}

std::string coords(const FpVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s + ")";
}

Outcome cmd_enumerate(const RunConfig& cfg) {
  EnumerationLimits limits;
  limits.cap = enumeration_cap();
  const auto effects = enumerate_effects(cfg.p, cfg.dim, limits);
  const BigInt expected_measurements = count_measurements(cfg.p, cfg.dim);
  std::optional<std::vector<Measurement>> measurements;
  try {
    measurements = enumerate_measurements(cfg.p, cfg.dim, limits);
  } catch (const EnumerationTooLarge&) {
  }

  BigInt pd = 1;
  for (std::int64_t i = 0; i < cfg.dim; ++i) pd *= cfg.p;
  const BigInt expected_effects = (pd - 1) / (cfg.p - 1);

  Outcome result;
  if (BigInt(effects.size()) != expected_effects ||
      (measurements && BigInt(measurements->size()) != expected_measurements)) {
    result.code = kMismatch;
  }

  switch (cfg.format) {
    case Format::Text: {
      std::ostringstream os;
      os << "GF(" << cfg.p << ")^" << cfg.dim << ": " << effects.size() << " effects\n";
      for (std::size_t i = 0; i < effects.size(); ++i) os << "  e" << i << " " << coords(effects[i].vector()) << "\n";
      if (measurements) {
        os << measurements->size() << " measurements\n";
        for (const auto& m : *measurements) {
          os << "  " << m.label() << " {";
          for (std::size_t i = 0; i < m.size(); ++i) os << (i ? ", " : "") << m.outcome_labels()[i];
          os << "}\n";
        }
      } else {
        os << expected_measurements.str() << " measurements (too many to list)\n";
      }
      result.body = os.str();
      break;
    }
    case Format::Json: {
      Json es = Json::array();
      for (const auto& e : effects) es.push_back(io::to_json(e));
      Json j{{"p", cfg.p},
             {"dim", cfg.dim},
             {"effect_count", effects.size()},
             {"effects", std::move(es)},
             {"measurement_count", expected_measurements.str()}};
      if (measurements) {
        Json ms = Json::array();
        for (const auto& m : *measurements) ms.push_back(io::to_json(m));
        j["measurements"] = std::move(ms);
      } else {
        j["measurements"] = nullptr;
      }
      result.body = dump(j);
      break;
    }
    case Format::Csv: {
      std::ostringstream os;
      os << "kind,label,members\n";
      for (std::size_t i = 0; i < effects.size(); ++i) {
        os << "effect,e" << i << "," << csv_escape(coords(effects[i].vector())) << "\n";
      }
      if (measurements) {
        for (const auto& m : *measurements) {
          std::string members;
          for (const auto& o : m.outcome_labels()) members += (members.empty() ? "" : " ") + o;
          os << "measurement," << m.label() << "," << csv_escape(members) << "\n";
        }
      }
      result.body = os.str();
      break;
    }
  }
  if (result.code == kMismatch) result.body += "MISMATCH: enumeration counts disagree with the closed forms\n";
  return result;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"modalkit: exact modal quantum theory over prime fields", "modalkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const std::map<std::string, Format> formats{
      {"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
  std::string format_name = "text";
  auto common = [&](CLI::App* sub, bool with_p) {
    if (with_p) sub->add_option("--p", cfg.p, "Prime field modulus")->capture_default_str();
    sub->add_option("--format", format_name, "Output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}, CLI::ignore_case))
        ->capture_default_str();
    sub->add_option("--out", cfg.output, "Write output to a file instead of stdout");
  };

  auto* table = app.add_subcommand("table", "Possibility table of the singlet (or --state)");
  common(table, true);
  table->add_option("--state", cfg.input, "Two-mobit state JSON")->check(CLI::ExistingFile);

  auto* coloring = app.add_subcommand("coloring", "Non-contextual coloring search");
  common(coloring, false);
  coloring->add_option("--file", cfg.input, "Coloring instance JSON")->check(CLI::ExistingFile);

  auto* local = app.add_subcommand("localmodels", "Local deterministic model search");
  common(local, true);
  local->add_option("--state", cfg.input, "Two-mobit state JSON")->check(CLI::ExistingFile);

  auto* nosig = app.add_subcommand("nosignal", "No-signaling probability analysis");
  common(nosig, true);
  nosig->add_option("--state", cfg.input, "Two-mobit state JSON")->check(CLI::ExistingFile);
  nosig->add_flag("--symbolic", cfg.symbolic, "Print the parametric solution family");

  auto* enumerate = app.add_subcommand("enumerate", "Canonical effects and measurements");
  common(enumerate, true);
  enumerate->add_option("--dim", cfg.dim, "Dimension")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  std::transform(format_name.begin(), format_name.end(), format_name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  cfg.format = formats.at(format_name);
  if (table->parsed()) cfg.command = Command::Table;
  if (coloring->parsed()) cfg.command = Command::Coloring;
  if (local->parsed()) cfg.command = Command::LocalModels;
  if (nosig->parsed()) cfg.command = Command::NoSignal;
  if (enumerate->parsed()) cfg.command = Command::Enumerate;

  Outcome result;
  try {
    if (cfg.command != Command::Coloring && !cfg.input && !is_prime(cfg.p)) {
      throw CompositeModulus("--p " + std::to_string(cfg.p) + " is not prime");
    }
    switch (cfg.command) {
      case Command::Table: result = cmd_table(cfg); break;
      case Command::Coloring: result = cmd_coloring(cfg); break;
      case Command::LocalModels: result = cmd_localmodels(cfg); break;
      case Command::NoSignal: result = cmd_nosignal(cfg); break;
      case Command::Enumerate: result = cmd_enumerate(cfg); break;
    }
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (cfg.output) {
    std::ofstream f(*cfg.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << *cfg.output << "'\n";
      return kUsage;
    }
    f << result.body;
  } else {
    out << result.body;
  }
  return result.code;
}

}  // namespace modalkit::cli
