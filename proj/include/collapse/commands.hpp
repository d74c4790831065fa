#ifndef COLLAPSE_COMMANDS_HPP_
#define COLLAPSE_COMMANDS_HPP_

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <map>
#include <ostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "criteria.hpp"
#include "error.hpp"
#include "group_io.hpp"
#include "io_json.hpp"
#include "nichols.hpp"

namespace collapse {

  struct Caps {
    std::size_t order = kDefaultOrderCap;
    std::size_t subgroup = kDefaultOrderCap;
    std::size_t rows = kDefaultRowCap;
    std::size_t degree = 12;
    std::uint64_t work = kDefaultWorkCap;
  };

  //! "order=N,subgroup=N,rows=N,degree=N,work=N", any subset, all positive.
  inline Caps parse_caps(std::string const& text, Caps caps = {}) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) {
        continue;
      }
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw InputError("cap '" + item + "' is not key=value");
      }
      std::string const key = item.substr(0, eq);
      std::size_t const v = detail::parse_size(item.substr(eq + 1), "cap " + key);
      if (v == 0) {
        throw InputError("cap " + key + " must be positive");
      }
      if (key == "order") {
        caps.order = v;
      } else if (key == "subgroup") {
        caps.subgroup = v;
      } else if (key == "rows") {
        caps.rows = v;
      } else if (key == "degree") {
        caps.degree = v;
      } else if (key == "work") {
        caps.work = v;
      } else {
        throw InputError("unknown cap '" + key
                         + "' (expected order, subgroup, rows, degree, work)");
      }
    }
    return caps;
  }

  inline constexpr int kExitOk = 0;
  inline constexpr int kExitInput = 2;
  inline constexpr int kExitCap = 3;
  inline constexpr int kExitInvariant = 4;

  //! Runs `body`, mapping the library's exceptions to process exit codes and
  //! printing one diagnostic line to `err`.
  template <typename F>
  int run_guarded(F&& body, std::ostream& err) {
    try {
      body();
    } catch (InputError const& e) {
      err << "error: " << e.what() << '\n';
      return kExitInput;
    } catch (CapExceeded const& e) {
      err << "cap exceeded: " << e.what() << '\n';
      return kExitCap;
    } catch (InvariantViolation const& e) {
      err << e.what() << '\n';
      return kExitInvariant;
    }
    return kExitOk;
  }

  enum class OutputFormat { Json, Text };

  struct RunConfig {
    std::string group = "S3";
    Caps caps;
    bool probe_hilbert = true;
    OutputFormat format = OutputFormat::Json;
    std::string out;
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    bool timing = false;
  };

  //! A command's JSON document and its text projection.
  struct CommandOutput {
    ojson json;
    std::string text;
  };

  namespace detail {
    inline ojson header(char const* schema) {
      return ojson{{"schema", schema},
                   {"schema_version", kSchemaVersion},
                   {"tool_version", kToolVersion}};
    }

    inline ojson caps_to_json(Caps const& c) {
      return ojson{{"order", c.order},
                   {"subgroup", c.subgroup},
                   {"rows", c.rows},
                   {"degree", c.degree},
                   {"work", c.work}};
    }

    struct LoadedGroup {
      GroupSpec spec;
      PermutationGroup group;
    };

    inline LoadedGroup load_group(RunConfig const& cfg) {
      GroupSpec spec = resolve_group_source(cfg.group);
      PermutationGroup g = build_group(spec, cfg.caps.order);
      return {std::move(spec), std::move(g)};
    }

    inline std::string join(std::vector<std::string> const& v,
                            char const* sep) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? sep : "") + v[i];
      }
      return out;
    }

    inline std::string dims_text(GradedDims const& g) {
      std::string s = "[";
      for (std::size_t i = 0; i < g.dims.size(); ++i) {
        s += (i ? "," : "") + std::to_string(g.dims[i]);
      }
      s += "] ";
      s += to_string(g.status);
      if (auto t = g.total()) {
        s += ", total " + std::to_string(*t);
      } else {
        s += " by " + g.truncated_by;
      }
      return s;
    }
  }  // namespace detail

  inline CommandOutput cmd_classes(RunConfig const& cfg) {
    auto lg = detail::load_group(cfg);
    ClassTable const table(lg.group);
    CommandOutput out;
    out.json = detail::header("collapse.classes");
    out.json["group"] = group_to_json(lg.spec, lg.group);
    ojson rows = ojson::array();
    std::ostringstream txt;
    txt << "group " << lg.spec.name << ", order " << lg.group.order() << ", "
        << table.size() << " classes\n";
    txt << "name\tsize\torder\treal\tquasireal\trepresentative\n";
    for (auto const& cls : table.classes()) {
      ojson row = class_row_to_json(lg.group, cls);
      std::vector<std::string> q;
      for (auto const& m : row["quasireal_exponents"]) {
        q.push_back(std::to_string(m.get<std::uint64_t>()));
      }
      txt << cls.name << '\t' << cls.size() << '\t' << cls.element_order << '\t'
          << (is_real(cls) ? "yes" : "no") << '\t'
          << (q.empty() ? "-" : detail::join(q, ",")) << '\t'
          << to_string(cls.representative) << '\n';
      rows.push_back(std::move(row));
    }
    out.json["classes"] = std::move(rows);
    out.text = txt.str();
    return out;
  }

  inline AnalyzeOptions analyze_options(RunConfig const& cfg) {
    AnalyzeOptions o;
    o.subgroup_cap = cfg.caps.subgroup;
    o.row_cap = cfg.caps.rows;
    o.work_cap = cfg.caps.work;
    o.max_degree = cfg.caps.degree;
    o.probe_hilbert = cfg.probe_hilbert;
    o.threads = cfg.threads;
    return o;
  }

  inline CommandOutput cmd_analyze(RunConfig const& cfg) {
    auto const start = std::chrono::steady_clock::now();
    auto lg = detail::load_group(cfg);
    GroupReport report = analyze_group(lg.group, lg.spec.name, analyze_options(cfg));
    ClassTable const table(lg.group);

    CommandOutput out;
    out.json = detail::header("collapse.analyze");
    ojson g = group_to_json(lg.spec, lg.group);
    g["class_count"] = table.size();
    out.json["group"] = std::move(g);
    out.json["caps"] = detail::caps_to_json(cfg.caps);
    out.json["probe_hilbert"] = cfg.probe_hilbert;
    ojson classes = ojson::array();
    std::map<std::string, std::size_t> counts{
        {"Collapses", 0}, {"CollapsesDim1", 0}, {"Unknown", 0}};
    std::ostringstream txt;
    txt << "group " << lg.spec.name << ", order " << lg.group.order() << ", "
        << table.size() << " classes\n";
    for (std::size_t i = 0; i < report.classes.size(); ++i) {
      auto const& c = report.classes[i];
      classes.push_back(class_report_to_json(c, table[i]));
      ++counts[to_string(c.verdict)];
      txt << c.name << " (size " << c.size << "): " << to_string(c.verdict);
      if (!c.reasons.empty()) {
        txt << " [" << detail::join(c.reasons, ", ") << "]";
      }
      txt << '\n';
    }
    out.json["classes"] = std::move(classes);
    out.json["summary"] = ojson{
        {"status", to_string(report.summary)},
        {"verdict_counts",
         ojson{{"Collapses", counts["Collapses"]},
               {"CollapsesDim1", counts["CollapsesDim1"]},
               {"Unknown", counts["Unknown"]}}},
        {"caveats", report.caveats}};
    if (cfg.timing) {
      double const secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
      out.json["timing"] = ojson{{"wall_seconds", secs}, {"threads", cfg.threads}};
    } else {
      out.json["timing"] = nullptr;
    }
    txt << "summary: " << to_string(report.summary) << '\n';
    for (auto const& c : report.caveats) {
      txt << "note: " << c << '\n';
    }
    out.text = txt.str();
    return out;
  }

  inline ojson matrix_to_json(SparseOperator const& q, std::size_t degree) {
    std::uint32_t m = 1;
    for (auto const& col : q.columns()) {
      for (auto const& e : col) {
        m = std::lcm(m, e.second.conductor());
      }
    }
    ojson entries = ojson::array();
    for (std::size_t j = 0; j < q.cols(); ++j) {
      for (auto const& [r, v] : q.column(j)) {
        entries.push_back(
            ojson::array({r, j, cyclotomic_coefficients(v.lift(m))}));
      }
    }
    return ojson{{"degree", degree},
                 {"dimension", q.rows()},
                 {"conductor", m},
                 {"basis", "lexicographic in rack indices, first tensor factor "
                           "most significant"},
                 {"entry_format", "[row, column, [[num, den] per power of "
                                  "E(conductor)]]"},
                 {"entries", std::move(entries)}};
  }

  inline CommandOutput cmd_nichols(RunConfig const& cfg,
                                   std::string const& rack_spec,
                                   std::string const& cocycle_spec,
                                   std::optional<std::size_t> dump_degree = {}) {
    auto rack = std::make_shared<Rack const>(parse_rack_spec(rack_spec));
    BraidedSpace v(parse_cocycle_spec(cocycle_spec, rack));
    NicholsOptions opts;
    opts.max_degree = cfg.caps.degree;
    opts.row_cap = cfg.caps.rows;
    opts.work_cap = cfg.caps.work;
    GradedDims g = hilbert_prefix(v, opts);

    CommandOutput out;
    out.json = detail::header("collapse.nichols");
    out.json["rack"] = ojson{{"source", rack_spec}, {"size", rack->size()}};
    out.json["cocycle"] = ojson{{"source", cocycle_spec}};
    out.json["caps"] = detail::caps_to_json(cfg.caps);
    ojson const dims = graded_dims_to_json(g);
    for (auto const& [k, val] : dims.items()) {
      out.json[k] = val;
    }
    out.json["rank_method"] = "multimodular";
    out.json["arbitrated_degrees"] = g.arbitrated_degrees;
    if (dump_degree) {
      out.json["matrix"]
          = matrix_to_json(symmetrizer_matrix(v, *dump_degree, cfg.caps.rows),
                           *dump_degree);
    } else {
      out.json["matrix"] = nullptr;
    }
    out.text = "dims " + detail::dims_text(g) + "\n";
    return out;
  }

  //! `selector` is a class name or "all".
  inline CommandOutput cmd_typed(RunConfig const& cfg, std::string const& selector) {
    auto lg = detail::load_group(cfg);
    ClassTable const table(lg.group);
    std::vector<std::size_t> chosen;
    if (selector == "all") {
      for (std::size_t i = 0; i < table.size(); ++i) {
        chosen.push_back(i);
      }
    } else if (auto i = table.find(selector)) {
      chosen.push_back(*i);
    } else {
      std::vector<std::string> names;
      for (auto const& c : table.classes()) {
        names.push_back(c.name);
      }
      throw InputError("no class named '" + selector + "'; classes: "
                       + detail::join(names, ", "));
    }

    CommandOutput out;
    out.json = detail::header("collapse.typed");
    out.json["group"] = group_to_json(lg.spec, lg.group);
    ojson results = ojson::array();
    std::ostringstream txt;
    for (std::size_t i : chosen) {
      auto const& cls = table[i];
      TypeDResult t = is_type_D_class(lg.group, cls, cfg.caps.subgroup);
      ojson r = ojson{{"class", cls.name}, {"size", cls.size()}};
      ojson const td = type_d_to_json(t, cls, true);
      for (auto const& [k, val] : td.items()) {
        r[k] = val;
      }
      results.push_back(std::move(r));
      txt << cls.name << ": ";
      if (t.witness) {
        auto const& w = *t.witness;
        std::vector<std::string> a;
        std::vector<std::string> b;
        for (RackIndex k : w.component_r) {
          a.push_back(to_string(cls.members[k]));
        }
        for (RackIndex k : w.component_s) {
          b.push_back(to_string(cls.members[k]));
        }
        txt << "r = " << to_string(cls.members[w.r])
            << ", s = " << to_string(cls.members[w.s]) << "; R = {"
            << detail::join(a, " ") << "}; S = {" << detail::join(b, " ") << "}";
      } else {
        txt << "none";
      }
      txt << (t.complete ? " (complete)" : " (incomplete)") << '\n';
    }
    out.json["results"] = std::move(results);
    out.text = txt.str();
    return out;
  }

}  // namespace collapse

#endif  // COLLAPSE_COMMANDS_HPP_
