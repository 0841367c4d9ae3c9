#include "qfinv/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "qfinv/calculus.hpp"
#include "qfinv/dsl.hpp"
#include "qfinv/error.hpp"
#include "qfinv/forms.hpp"
#include "qfinv/graphs.hpp"

namespace qfinv::cli {

namespace {

using nlohmann::json;

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* check_name(Check c) {
  switch (c) {
    case Check::Isotropic:
      return "isotropic";
    case Check::Universal:
      return "universal";
    case Check::Au:
      return "au";
    case Check::Radical:
      return "radical";
  }
  return "";
}

std::string read_descriptor(const std::string& text) {
  if (text.empty() || text[0] != '@') return text;
  const std::string path = text.substr(1);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read descriptor file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::pair<unsigned, unsigned> parse_dims(const std::string& text) {
  const auto sep = text.find("..");
  try {
    std::size_t used = 0;
    if (sep == std::string::npos) {
      const auto d = std::stoul(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {static_cast<unsigned>(d), static_cast<unsigned>(d)};
    }
    const auto lo_text = text.substr(0, sep);
    const auto hi_text = text.substr(sep + 2);
    const auto lo = std::stoul(lo_text, &used);
    if (used != lo_text.size()) throw std::invalid_argument(text);
    const auto hi = std::stoul(hi_text, &used);
    if (used != hi_text.size()) throw std::invalid_argument(text);
    if (lo < 1 || lo > hi || hi > 64) throw UsageError("--dims must satisfy 1 <= A <= B <= 64");
    return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
  } catch (const std::logic_error&) {
    throw UsageError("--dims expects A..B, got '" + text + "'");
  }
}

ValidationMode parse_mode(const std::string& text) {
  if (text == "exhaustive") return ValidationMode::exhaustive();
  const std::string prefix = "random:";
  if (text.rfind(prefix, 0) == 0) {
    const auto rest = text.substr(prefix.size());
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      try {
        std::size_t used = 0;
        const auto n_text = rest.substr(0, colon);
        const auto seed_text = rest.substr(colon + 1);
        const auto n = std::stoull(n_text, &used);
        if (used == n_text.size() && !n_text.empty() && n_text[0] != '-') {
          const auto seed = std::stoull(seed_text, &used);
          if (used == seed_text.size() && seed_text[0] != '-') return ValidationMode::random(n, seed);
        }
      } catch (const std::logic_error&) {
      }
    }
  }
  throw UsageError("--mode expects exhaustive or random:N:SEED, got '" + text + "'");
}

std::string print_mode(const ValidationMode& m) {
  if (m.kind == ValidationMode::Kind::Exhaustive) return "exhaustive";
  return "random:" + std::to_string(m.samples) + ":" + std::to_string(m.seed);
}

std::string print_tower(const Tower& t) { return std::to_string(t.p()) + "," + std::to_string(t.r()); }

json to_json(const InvariantValue& v) { return v.is_finite() ? json(v.value()) : json("inf"); }

/// "key  value" lines for --table.
void write_table(std::ostream& out, const json& doc) {
  std::size_t width = 0;
  for (const auto& [key, value] : doc.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : doc.items()) {
    out << key << std::string(width - key.size() + 2, ' ');
    if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << "\n";
  }
}

void emit(std::ostream& out, const json& doc, bool table) {
  if (table) {
    write_table(out, doc);
  } else {
    out << doc.dump(2) << "\n";
  }
}

json field_info(const FieldDescriptor& f) {
  json doc;
  doc["descriptor"] = print_field(f);
  doc["au"] = au_set(f).to_vector();
  doc["m"] = to_json(m_invariant(f));
  doc["u"] = to_json(u_invariant(f));
  doc["ms_us"] = is_ms_us_computable(f) ? json(ms_us(f)) : json(nullptr);
  doc["layer"] = nullptr;
  doc["fully_arboreal"] = false;
  if (f.is_semi_global()) {
    const auto l = layer(f);
    doc["layer"] = to_json(l);
    doc["fully_arboreal"] = l.is_infinite();
    doc["n"] = cdvf_depth(f.inner());
  } else if (f.is_rational_fn()) {
    const auto n = cdvf_depth(f.inner());
    if (n >= 1) {
      doc["layer"] = "inf";
      doc["fully_arboreal"] = true;
    }
    doc["n"] = n;
  } else {
    doc["n"] = cdvf_depth(f);
  }
  return doc;
}

json form_check(const FormCheck& c) {
  json doc;
  doc["tower"] = print_tower(c.tower);
  doc["check"] = check_name(c.check);
  if (!c.form) {
    if (c.check == Check::Au) {
      EnumerationOptions opts;
      opts.max_dim = c.max_dim;
      opts.max_r = c.max_r;
      const auto e = au_enumerate(c.tower, opts);
      doc["au"] = e.au.to_vector();
      doc["m"] = to_json(e.m);
      doc["u"] = to_json(e.u);
    } else {
      json classes = json::array();
      for (const auto s : kaplansky_radical(c.tower, c.max_r)) classes.push_back(c.tower.class_name(s));
      doc["radical"] = classes;
      doc["full"] = classes.size() == c.tower.class_count();
    }
    return doc;
  }
  const auto& q = *c.form;
  doc["form"] = print_form(c.tower, q);
  switch (c.check) {
    case Check::Isotropic: {
      const auto d = decide_isotropic(c.tower, q);
      doc["result"] = d.value;
      doc["depth"] = d.depth;
      break;
    }
    case Check::Universal: {
      const auto d = decide_universal(c.tower, q);
      doc["result"] = d.value;
      doc["depth"] = d.depth;
      break;
    }
    case Check::Au: {
      const auto d = decide_isotropic(c.tower, q);
      doc["result"] = !d.value && is_universal(c.tower, q);
      doc["depth"] = d.depth;
      break;
    }
    case Check::Radical: {
      const auto radical = kaplansky_radical(c.tower, c.max_r);
      json members = json::array();
      bool all = true;
      for (const auto s : q.entries) {
        const bool in = std::find(radical.begin(), radical.end(), s) != radical.end();
        members.push_back(in);
        all = all && in;
      }
      doc["in_radical"] = members;
      doc["result"] = all;
      break;
    }
  }
  return doc;
}

int execute(const Command& c, std::ostream& out) {
  return std::visit(
      [&](const auto& cmd) -> int {
        using T = std::decay_t<decltype(cmd)>;
        if constexpr (std::is_same_v<T, FieldInfo>) {
          emit(out, field_info(cmd.field), c.table);
        } else if constexpr (std::is_same_v<T, FormCheck>) {
          emit(out, form_check(cmd), c.table);
        } else if constexpr (std::is_same_v<T, Attainable>) {
          json sets = json::array();
          for (const auto& s : attainable_au(cmd.n, cmd.base)) sets.push_back(s.to_vector());
          json doc;
          doc["base"] = print_base(cmd.base);
          doc["n"] = cmd.n;
          doc["count"] = sets.size();
          doc["sets"] = sets;
          emit(out, doc, c.table);
        } else if constexpr (std::is_same_v<T, PossibleM>) {
          json values = json::array();
          for (const auto& v : possible_m(cmd.n, cmd.base)) values.push_back(to_json(v));
          json doc;
          doc["base"] = print_base(cmd.base);
          doc["n"] = cmd.n;
          doc["values"] = values;
          emit(out, doc, c.table);
        } else if constexpr (std::is_same_v<T, LayerExample>) {
          const auto f = make_layer_example(cmd.n, cmd.j, cmd.base);
          json doc;
          doc["descriptor"] = print_field(f);
          doc["n"] = cmd.n;
          doc["j"] = cmd.j;
          doc["layer"] = to_json(layer(f));
          doc["m"] = to_json(m_invariant(f));
          doc["m_from_layer"] = to_json(m_from_layer(f));
          emit(out, doc, c.table);
        } else if constexpr (std::is_same_v<T, Verify>) {
          CrossValidateOptions opts;
          opts.degree_bound = cmd.degree_bound;
          const auto report = cross_validate(cmd.tower, cmd.dim_lo, cmd.dim_hi, cmd.mode, opts);
          out << report.serialize();
          return report.contradictions() == 0 ? 0 : 1;
        } else {
          out << to_dot(cmd.field);
        }
        return 0;
      },
      c.body);
}

}  // namespace

Command parse_command(const std::vector<std::string>& args) {
  CLI::App app{"Quadratic-form invariants of field towers and semi-global fields", "qfinv"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  bool table = false;
  app.add_flag("--table", table, "Human-readable output");

  std::string descriptor;
  std::string tower_text;
  std::string form_text;
  std::string check_text = "isotropic";
  std::string base_text = "finite";
  std::string dims_text = "1..3";
  std::string mode_text = "exhaustive";
  unsigned n = 1;
  unsigned j = 1;
  unsigned max_dim = 0;
  unsigned max_r = 2;
  int degree_bound = 1;

  auto* field_info_cmd = app.add_subcommand("field-info", "Invariants of a field descriptor");
  field_info_cmd->add_option("descriptor", descriptor, "Descriptor text or @file")->required();

  auto* form_check_cmd = app.add_subcommand("form-check", "Decide a property of a form over a tower");
  form_check_cmd->add_option("--tower", tower_text, "p,r")->required();
  form_check_cmd->add_option("--form", form_text, "Form literal")->required();
  form_check_cmd->add_option("--check", check_text, "isotropic|universal|au|radical")
      ->check(CLI::IsMember({"isotropic", "universal", "au", "radical"}));
  form_check_cmd->add_option("--max-r", max_r, "Radical depth cap")->check(CLI::Range(0U, 16U));

  auto* au_cmd = app.add_subcommand("au-enumerate", "AU set of a tower by exhaustive enumeration");
  au_cmd->add_option("--tower", tower_text, "p,r")->required();
  auto* max_dim_opt = au_cmd->add_option("--max-dim", max_dim, "Largest form dimension")->check(CLI::Range(1U, 64U));
  au_cmd->add_option("--max-r", max_r, "Depth cap")->check(CLI::Range(0U, 16U));

  auto* radical_cmd = app.add_subcommand("radical", "Kaplansky radical of a tower");
  radical_cmd->add_option("--tower", tower_text, "p,r")->required();
  radical_cmd->add_option("--max-r", max_r, "Depth cap")->check(CLI::Range(0U, 16U));

  auto* attainable_cmd = app.add_subcommand("attainable", "Attainable AU sets over n-local fields");
  attainable_cmd->add_option("--n", n, "Local depth")->required();
  attainable_cmd->add_option("--base", base_text, "algclosed|finite[:P]|custom:R:HYP");

  auto* possible_cmd = app.add_subcommand("possible-m", "Possible m-invariants");
  possible_cmd->add_option("--n", n, "Local depth")->required();
  possible_cmd->add_option("--base", base_text, "algclosed|finite[:P]|custom:R:HYP");

  auto* layer_cmd = app.add_subcommand("layer-example", "Semi-global field with a prescribed layer");
  layer_cmd->add_option("--n", n, "Local depth")->required();
  layer_cmd->add_option("--j", j, "Layer")->required();
  layer_cmd->add_option("--base", base_text, "algclosed|finite[:P]|custom:R:HYP");

  auto* verify_cmd = app.add_subcommand("verify", "Cross-validate the decision procedure");
  verify_cmd->add_option("--tower", tower_text, "p,r")->required();
  verify_cmd->add_option("--dims", dims_text, "A..B");
  verify_cmd->add_option("--mode", mode_text, "exhaustive|random:N:SEED");
  verify_cmd->add_option("--degree-bound", degree_bound, "Witness exponent bound")->check(CLI::Range(0, 8));

  auto* graph_cmd = app.add_subcommand("export-graph", "DOT export of a semi-global descriptor");
  graph_cmd->add_option("descriptor", descriptor, "Descriptor text or @file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  auto body = [&]() -> decltype(Command::body) {
    if (field_info_cmd->parsed()) {
      return FieldInfo{parse_field(read_descriptor(descriptor))};
    } else if (form_check_cmd->parsed()) {
      FormCheck c;
      c.tower = parse_tower(tower_text);
      c.form = parse_form(form_text, c.tower);
      c.check = check_text == "isotropic"   ? Check::Isotropic
                : check_text == "universal" ? Check::Universal
                : check_text == "au"        ? Check::Au
                                            : Check::Radical;
      c.max_r = max_r;
      return c;
    } else if (au_cmd->parsed()) {
      FormCheck c;
      c.tower = parse_tower(tower_text);
      c.check = Check::Au;
      if (max_dim_opt->count() > 0) c.max_dim = max_dim;
      c.max_r = max_r;
      return c;
    } else if (radical_cmd->parsed()) {
      FormCheck c;
      c.tower = parse_tower(tower_text);
      c.check = Check::Radical;
      c.max_r = max_r;
      return c;
    } else if (attainable_cmd->parsed()) {
      return Attainable{n, parse_base(base_text)};
    } else if (possible_cmd->parsed()) {
      return PossibleM{n, parse_base(base_text)};
    } else if (layer_cmd->parsed()) {
      return LayerExample{n, j, parse_base(base_text)};
    } else if (verify_cmd->parsed()) {
      Verify v;
      v.tower = parse_tower(tower_text);
      std::tie(v.dim_lo, v.dim_hi) = parse_dims(dims_text);
      v.mode = parse_mode(mode_text);
      v.degree_bound = degree_bound;
      return v;
    } else {
      return ExportGraph{parse_field(read_descriptor(descriptor))};
    }
  }();
  return Command{std::move(body), table};
}

std::vector<std::string> to_args(const Command& c) {
  std::vector<std::string> args = std::visit(
      [](const auto& cmd) -> std::vector<std::string> {
        using T = std::decay_t<decltype(cmd)>;
        if constexpr (std::is_same_v<T, FieldInfo>) {
          return {"field-info", print_field(cmd.field)};
        } else if constexpr (std::is_same_v<T, FormCheck>) {
          std::vector<std::string> a;
          if (cmd.form) {
            a = {"form-check", "--tower", print_tower(cmd.tower), "--form", print_form(cmd.tower, *cmd.form),
                 "--check", check_name(cmd.check)};
          } else if (cmd.check == Check::Radical) {
            a = {"radical", "--tower", print_tower(cmd.tower)};
          } else {
            a = {"au-enumerate", "--tower", print_tower(cmd.tower)};
            if (cmd.max_dim) a.insert(a.end(), {"--max-dim", std::to_string(*cmd.max_dim)});
          }
          a.insert(a.end(), {"--max-r", std::to_string(cmd.max_r)});
          return a;
        } else if constexpr (std::is_same_v<T, Attainable>) {
          return {"attainable", "--n", std::to_string(cmd.n), "--base", print_base(cmd.base)};
        } else if constexpr (std::is_same_v<T, PossibleM>) {
          return {"possible-m", "--n", std::to_string(cmd.n), "--base", print_base(cmd.base)};
        } else if constexpr (std::is_same_v<T, LayerExample>) {
          return {"layer-example", "--n", std::to_string(cmd.n), "--j", std::to_string(cmd.j), "--base",
                  print_base(cmd.base)};
        } else if constexpr (std::is_same_v<T, Verify>) {
          return {"verify",
                  "--tower",
                  print_tower(cmd.tower),
                  "--dims",
                  std::to_string(cmd.dim_lo) + ".." + std::to_string(cmd.dim_hi),
                  "--mode",
                  print_mode(cmd.mode),
                  "--degree-bound",
                  std::to_string(cmd.degree_bound)};
        } else {
          return {"export-graph", print_field(cmd.field)};
        }
      },
      c.body);
  if (c.table) args.emplace_back("--table");
  return args;
}

int run(const Command& c, std::ostream& out, std::ostream& err) {
  try {
    return execute(c, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<Command> command;
  try {
    command = parse_command(args);
  } catch (const HelpRequested& e) {
    out << e.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return run(*command, out, err);
}

}  // namespace qfinv::cli
