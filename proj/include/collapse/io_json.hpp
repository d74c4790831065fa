#ifndef COLLAPSE_IO_JSON_HPP_
#define COLLAPSE_IO_JSON_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "braiding.hpp"
#include "cocycle.hpp"
#include "conjugation.hpp"
#include "criteria.hpp"
#include "cyclotomic.hpp"
#include "error.hpp"
#include "group_io.hpp"
#include "nichols.hpp"
#include "rack.hpp"

namespace collapse {

  using ojson = nlohmann::ordered_json;

  inline constexpr char const* kToolVersion = "0.1.0";
  inline constexpr char const* kSchemaVersion = "1.0";

  // ---------------------------------------------------------------------
  // Input literals

  namespace detail {
    inline std::string read_text_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw InputError("cannot read " + path);
      }
      std::stringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }

    inline nlohmann::json parse_json_text(std::string const& text,
                                          std::string const& what) {
      try {
        return nlohmann::json::parse(text);
      } catch (nlohmann::json::exception const& e) {
        throw InputError(what + ": " + e.what());
      }
    }

    // Inline JSON, or the contents of a file.
    inline std::optional<nlohmann::json> json_literal(std::string const& spec,
                                                      std::string const& what) {
      auto first = spec.find_first_not_of(" \t\r\n");
      if (first != std::string::npos && spec[first] == '{') {
        return parse_json_text(spec, what);
      }
      std::error_code ec;
      if (std::filesystem::is_regular_file(spec, ec)) {
        return parse_json_text(read_text_file(spec), what + " " + spec);
      }
      return std::nullopt;
    }

    inline std::size_t parse_size(std::string const& s, std::string const& what) {
      std::size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(s, &pos);
      } catch (std::exception const&) {
        pos = 0;
      }
      if (pos == 0 || pos != s.size()) {
        throw InputError("bad " + what + " '" + s + "'");
      }
      return static_cast<std::size_t>(v);
    }

    inline mpq_class json_rational(nlohmann::json const& j) {
      if (j.is_number_integer()) {
        return mpq_class(static_cast<long>(j.get<long long>()));
      }
      if (j.is_string()) {
        mpq_class q;
        if (q.set_str(j.get<std::string>(), 10) != 0) {
          throw InputError("bad rational '" + j.get<std::string>() + "'");
        }
        if (q.get_den() == 0) {
          throw InputError("zero denominator");
        }
        q.canonicalize();
        return q;
      }
      if (j.is_array() && j.size() == 2 && j[0].is_number_integer()
          && j[1].is_number_integer()) {
        long long den = j[1].get<long long>();
        if (den == 0) {
          throw InputError("zero denominator");
        }
        mpq_class q(static_cast<long>(j[0].get<long long>()),
                    static_cast<long>(den));
        q.canonicalize();
        return q;
      }
      throw InputError("rational coefficient must be an integer, \"p/q\" or "
                       "[p, q]; got " + j.dump());
    }
  }  // namespace detail

  inline Rack rack_from_json(nlohmann::json const& j) {
    if (!j.is_object() || !j.contains("size") || !j.contains("table")) {
      throw InputError("rack literal needs \"size\" and \"table\"");
    }
    if (!j["size"].is_number_integer() || j["size"].get<long long>() < 1) {
      throw InputError("rack size must be a positive integer");
    }
    auto const n = static_cast<std::size_t>(j["size"].get<long long>());
    auto const& t = j["table"];
    if (!t.is_array() || t.size() != n) {
      throw InputError("rack table must have " + std::to_string(n) + " rows");
    }
    std::vector<RackIndex> table;
    table.reserve(n * n);
    for (auto const& row : t) {
      if (!row.is_array() || row.size() != n) {
        throw InputError("every rack table row must have "
                         + std::to_string(n) + " entries");
      }
      for (auto const& v : row) {
        if (!v.is_number_integer() || v.get<long long>() < 0
            || static_cast<std::size_t>(v.get<long long>()) >= n) {
          throw InputError("rack table entries must be integers in [0, "
                           + std::to_string(n) + ")");
        }
        table.push_back(static_cast<RackIndex>(v.get<long long>()));
      }
    }
    return Rack::from_table(n, std::move(table));
  }

  inline ojson rack_to_json(Rack const& r) {
    ojson table = ojson::array();
    for (std::size_t x = 0; x < r.size(); ++x) {
      ojson row = ojson::array();
      for (std::size_t y = 0; y < r.size(); ++y) {
        row.push_back(r(x, y));
      }
      table.push_back(std::move(row));
    }
    return ojson{{"size", r.size()}, {"table", std::move(table)}};
  }

  //! Rack source: inline JSON, a JSON file, or a named construction:
  //! dihedral:P, abelian:K, O, double:<source>, class:<group>:<class name>.
  inline Rack parse_rack_spec(std::string const& spec) {
    if (auto j = detail::json_literal(spec, "rack literal")) {
      return rack_from_json(*j);
    }
    if (spec == "O") {
      return octahedral_rack();
    }
    auto colon = spec.find(':');
    std::string const head = spec.substr(0, colon);
    std::string const arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "dihedral") {
      return dihedral_rack(detail::parse_size(arg, "dihedral size"));
    }
    if (head == "abelian") {
      std::size_t k = detail::parse_size(arg, "abelian rack size");
      if (k < 1) {
        throw InputError("abelian rack size must be positive");
      }
      return trivial_rack(k);
    }
    if (head == "double") {
      return double_rack(parse_rack_spec(arg));
    }
    if (head == "class") {
      auto c2 = arg.find(':');
      if (c2 == std::string::npos) {
        throw InputError("class rack needs class:<group>:<class name>");
      }
      PermutationGroup g = build_group(resolve_group_source(arg.substr(0, c2)));
      ClassTable table(g);
      auto idx = table.find(arg.substr(c2 + 1));
      if (!idx) {
        throw InputError("no class named '" + arg.substr(c2 + 1) + "'");
      }
      return conjugation_rack(g, table[*idx]);
    }
    throw InputError("unknown rack source '" + spec
                     + "' (expected JSON, a file, dihedral:P, abelian:K, O, "
                       "double:<rack>, class:<group>:<class>)");
  }

  //! Cocycle source: constant:<scalar>, {"constant": "<scalar>"}, or
  //! {"conductor": m, "values": n x n entries}, each entry either a scalar
  //! string or a list of rational coefficients of 1, E(m), E(m)^2, ...
  inline Cocycle parse_cocycle_spec(std::string const& spec,
                                    std::shared_ptr<Rack const> rack) {
    if (spec.rfind("constant:", 0) == 0) {
      return constant_cocycle(std::move(rack), parse_cyclotomic(spec.substr(9)));
    }
    auto j = detail::json_literal(spec, "cocycle literal");
    if (!j) {
      throw InputError("unknown cocycle source '" + spec
                       + "' (expected constant:<scalar>, JSON, or a file)");
    }
    if (!j->is_object()) {
      throw InputError("cocycle literal must be a JSON object");
    }
    if (j->contains("constant")) {
      auto const& c = (*j)["constant"];
      Cyclotomic v = c.is_string() ? parse_cyclotomic(c.get<std::string>())
                                   : Cyclotomic(detail::json_rational(c));
      return constant_cocycle(std::move(rack), v);
    }
    if (!j->contains("values")) {
      throw InputError("cocycle literal needs \"constant\" or \"values\"");
    }
    std::uint32_t m = 1;
    if (j->contains("conductor")) {
      auto const& c = (*j)["conductor"];
      if (!c.is_number_integer() || c.get<long long>() < 1
          || c.get<long long>() > 100000) {
        throw InputError("conductor must be an integer in [1, 100000]");
      }
      m = static_cast<std::uint32_t>(c.get<long long>());
    }
    std::size_t const n = rack->size();
    auto const& vals = (*j)["values"];
    if (!vals.is_array() || vals.size() != n) {
      throw InputError("cocycle values must have " + std::to_string(n) + " rows");
    }
    std::vector<Cyclotomic> v;
    v.reserve(n * n);
    for (auto const& row : vals) {
      if (!row.is_array() || row.size() != n) {
        throw InputError("every cocycle row must have " + std::to_string(n)
                         + " entries");
      }
      for (auto const& e : row) {
        if (e.is_string()) {
          v.push_back(parse_cyclotomic(e.get<std::string>()));
        } else if (e.is_array()) {
          std::vector<mpq_class> poly;
          for (auto const& c : e) {
            poly.push_back(detail::json_rational(c));
          }
          if (poly.empty()) {
            throw InputError("empty coefficient list");
          }
          v.push_back(Cyclotomic::from_polynomial(m, std::move(poly)));
        } else if (e.is_number_integer()) {
          v.push_back(Cyclotomic(detail::json_rational(e)));
        } else {
          throw InputError("bad cocycle entry " + e.dump());
        }
      }
    }
    return Cocycle(std::move(rack), std::move(v));
  }

  // ---------------------------------------------------------------------
  // Output

  inline ojson rational_pair(mpq_class const& q) {
    return ojson::array({q.get_num().get_str(), q.get_den().get_str()});
  }

  inline ojson cyclotomic_coefficients(Cyclotomic const& c) {
    ojson a = ojson::array();
    for (auto const& q : c.coefficients()) {
      a.push_back(rational_pair(q));
    }
    return a;
  }

  inline ojson group_to_json(GroupSpec const& spec, PermutationGroup const& g) {
    ojson gens = ojson::array();
    for (auto const& s : spec.generators) {
      gens.push_back(to_string(parse_permutation(s, spec.degree)));
    }
    return ojson{{"name", spec.name},
                 {"degree", g.degree()},
                 {"order", g.order()},
                 {"generators", std::move(gens)}};
  }

  inline ojson class_row_to_json(PermutationGroup const& g,
                                 ConjugacyClass const& cls) {
    ojson q = ojson::array();
    for (auto m : quasireal_exponents(cls)) {
      q.push_back(m);
    }
    return ojson{{"name", cls.name},
                 {"size", cls.size()},
                 {"element_order", cls.element_order},
                 {"representative", to_string(cls.representative)},
                 {"centralizer_order", g.order() / cls.size()},
                 {"real", is_real(cls)},
                 {"quasireal_exponents", std::move(q)}};
  }

  inline ojson graded_dims_to_json(GradedDims const& g) {
    ojson j;
    j["dims"] = g.dims;
    j["status"] = to_string(g.status);
    auto t = g.total();
    j["total"] = t ? ojson(*t) : ojson(nullptr);
    j["truncated_by"] = g.status == SeriesStatus::Truncated
                            ? ojson(g.truncated_by)
                            : ojson(nullptr);
    j["max_degree"] = g.max_degree;
    j["row_cap"] = g.row_cap;
    j["work_cap"] = g.work_cap;
    return j;
  }

  inline ojson labels_to_json(Rack const& rack,
                              std::vector<RackIndex> const& idx) {
    ojson a = ojson::array();
    for (RackIndex i : idx) {
      a.push_back(rack.has_labels() ? ojson(to_string(rack.labels()[i]))
                                    : ojson(i));
    }
    return a;
  }

  inline ojson type_d_to_json(TypeDResult const& t,
                              ConjugacyClass const& cls,
                              bool list_components) {
    ojson w = nullptr;
    if (t.witness) {
      auto const& x = *t.witness;
      w = ojson{{"r", to_string(cls.members[x.r])},
                {"s", to_string(cls.members[x.s])},
                {"r_index", x.r},
                {"s_index", x.s},
                {"subrack_size", x.subrack.size()},
                {"component_r_size", x.component_r.size()},
                {"component_s_size", x.component_s.size()}};
      if (list_components) {
        ojson a = ojson::array();
        ojson b = ojson::array();
        for (RackIndex i : x.component_r) {
          a.push_back(to_string(cls.members[i]));
        }
        for (RackIndex i : x.component_s) {
          b.push_back(to_string(cls.members[i]));
        }
        w["component_r"] = std::move(a);
        w["component_s"] = std::move(b);
      }
    }
    return ojson{{"witness", std::move(w)},
                 {"complete", t.complete},
                 {"unresolved_pairs", t.unresolved_pairs}};
  }

  inline ojson class_report_to_json(ClassReport const& r,
                                    ConjugacyClass const& cls) {
    ojson j;
    j["name"] = r.name;
    j["size"] = r.size;
    j["element_order"] = r.element_order;
    j["representative"] = to_string(r.representative);
    j["centralizer_order"] = r.centralizer_order;
    j["real"] = r.real;
    j["quasireal_exponents"] = r.quasireal;
    j["type_d"] = type_d_to_json(r.type_d, cls, false);

    ojson chars = ojson::array();
    for (auto const& c : r.characters) {
      chars.push_back(ojson{{"index", c.index},
                            {"conductor", c.conductor},
                            {"value_at_basepoint", to_string(c.value_at_basepoint)},
                            {"qxx_one", c.qxx_one}});
    }
    j["characters"] = std::move(chars);

    ojson ab = ojson::array();
    for (auto const& f : r.abelian_findings) {
      ojson diag = ojson::array();
      for (std::size_t k = 0; k < f.diagonal.size(); ++k) {
        auto const& d = f.diagonal[k];
        ojson mat = ojson::array();
        bool qxx_one = true;
        for (std::size_t a = 0; a < d.rank; ++a) {
          ojson row = ojson::array();
          for (std::size_t b = 0; b < d.rank; ++b) {
            row.push_back(to_string(d(a, b)));
          }
          qxx_one = qxx_one && d(a, a).is_one();
          mat.push_back(std::move(row));
        }
        diag.push_back(ojson{{"character", k},
                             {"matrix", std::move(mat)},
                             {"qxx_one", qxx_one}});
      }
      ab.push_back(ojson{{"size", f.indices.size()},
                         {"elements", labels_to_json(*r.rack, f.indices)},
                         {"diagonal", std::move(diag)}});
    }
    j["abelian_findings"] = std::move(ab);

    j["double_search"] = r.double_search_run ? "done" : "skipped";
    ojson dbl = ojson::array();
    for (auto const& f : r.double_findings) {
      dbl.push_back(ojson{{"template", f.template_name},
                          {"size", f.subrack.indices.size()},
                          {"elements", labels_to_json(*r.rack, f.subrack.indices)}});
    }
    j["double_findings"] = std::move(dbl);

    ojson probes = ojson::array();
    for (auto const& p : r.hilbert_probes) {
      ojson pj = graded_dims_to_json(p.dims);
      pj["character"] = p.character;
      probes.push_back(std::move(pj));
    }
    j["hilbert_probes"] = std::move(probes);
    j["annotations"] = r.annotations;
    j["verdict"] = to_string(r.verdict);
    j["reasons"] = r.reasons;
    return j;
  }

}  // namespace collapse

#endif  // COLLAPSE_IO_JSON_HPP_
