#ifndef COLLAPSE_GROUP_IO_HPP_
#define COLLAPSE_GROUP_IO_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "permutation.hpp"

namespace collapse {

  //! Group file text: first content line `degree N`, then one generator per
  //! line in cycle notation. `#` starts a comment.
  struct GroupSpec {
    std::string name;
    std::size_t degree = 1;
    std::vector<std::string> generators;
    std::optional<std::size_t> expected_order;
  };

  inline GroupSpec parse_group_text(std::string_view text,
                                    std::string name = "file") {
    GroupSpec spec;
    spec.name = std::move(name);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool have_degree = false;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) {
        line.erase(h);
      }
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) {
        continue;
      }
      auto last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);
      if (!have_degree) {
        std::istringstream ls(line);
        std::string kw;
        long long n = 0;
        std::string rest;
        if (!(ls >> kw >> n) || kw != "degree" || (ls >> rest) || n < 1
            || n > 65535) {
          throw InputError("line " + std::to_string(lineno)
                           + ": expected 'degree N' with 1 <= N <= 65535");
        }
        spec.degree = static_cast<std::size_t>(n);
        have_degree = true;
        continue;
      }
      try {
        parse_permutation(line, spec.degree);
      } catch (InputError const& e) {
        throw InputError("line " + std::to_string(lineno) + ": " + e.what());
      }
      spec.generators.push_back(line);
    }
    if (!have_degree) {
      throw InputError("group file has no 'degree N' line");
    }
    return spec;
  }

  //! Named groups shipped with the tool, with their orders.
  inline std::vector<GroupSpec> const& fixtures() {
    static std::vector<GroupSpec> const specs = [] {
      std::vector<GroupSpec> v;
      auto add = [&](std::string name, std::size_t degree,
                     std::vector<std::string> gens, std::size_t order) {
        v.push_back(GroupSpec{std::move(name), degree, std::move(gens), order});
      };
      add("trivial", 1, {}, 1);
      add("S3", 3, {"(1,2,3)", "(1,2)"}, 6);
      add("S4", 4, {"(1,2,3,4)", "(1,2)"}, 24);
      add("S5", 5, {"(1,2,3,4,5)", "(1,2)"}, 120);
      add("S6", 6, {"(1,2,3,4,5,6)", "(1,2)"}, 720);
      add("A4", 4, {"(1,2,3)", "(1,2)(3,4)"}, 12);
      add("A5", 5, {"(1,2,3)", "(1,2,3,4,5)"}, 60);
      add("A6", 6, {"(1,2,3)", "(2,3,4,5,6)"}, 360);
      add("D3", 3, {"(1,2,3)", "(2,3)"}, 6);
      add("D5", 5, {"(1,2,3,4,5)", "(2,5)(3,4)"}, 10);
      add("D7", 7, {"(1,2,3,4,5,6,7)", "(2,7)(3,6)(4,5)"}, 14);
      add("D11", 11, {"(1,2,3,4,5,6,7,8,9,10,11)",
                      "(2,11)(3,10)(4,9)(5,8)(6,7)"}, 22);
      add("M11", 11, {"(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"},
          7920);
      add("M12", 12, {"(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)",
                      "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"}, 95040);
      return v;
    }();
    return specs;
  }

  inline std::optional<GroupSpec> find_fixture(std::string_view name) {
    for (auto const& f : fixtures()) {
      if (f.name == name) {
        return f;
      }
    }
    return std::nullopt;
  }

  //! Enumerates the group; a fixture whose order differs from the shipped
  //! value is an internal error.
  inline PermutationGroup build_group(GroupSpec const& spec,
                                      std::size_t cap = kDefaultOrderCap) {
    std::vector<Permutation> gens;
    for (auto const& g : spec.generators) {
      gens.push_back(parse_permutation(g, spec.degree));
    }
    PermutationGroup group = generate_group(spec.degree, std::move(gens), cap);
    if (spec.expected_order && group.order() != *spec.expected_order) {
      detail::invariant_failure("fixture " + spec.name + " has order "
                                + std::to_string(group.order()) + ", expected "
                                + std::to_string(*spec.expected_order));
    }
    return group;
  }

  //! A fixture name or a path to a group file.
  inline GroupSpec resolve_group_source(std::string const& source) {
    if (auto f = find_fixture(source)) {
      return *f;
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(source, ec)) {
      std::string names;
      for (auto const& f : fixtures()) {
        names += (names.empty() ? "" : ", ") + f.name;
      }
      throw InputError("'" + source
                       + "' is neither a fixture nor a readable file; fixtures: "
                       + names);
    }
    std::ifstream in(source);
    std::stringstream buf;
    buf << in.rdbuf();
    if (!in) {
      throw InputError("cannot read " + source);
    }
    return parse_group_text(buf.str(),
                            std::filesystem::path(source).filename().string());
  }

}  // namespace collapse

#endif  // COLLAPSE_GROUP_IO_HPP_
