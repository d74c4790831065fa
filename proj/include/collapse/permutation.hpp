#ifndef COLLAPSE_PERMUTATION_HPP_
#define COLLAPSE_PERMUTATION_HPP_

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace collapse {

  using Point = std::uint16_t;

  //! A permutation of {0, ..., degree-1}. Points are 0-based internally and
  //! 1-based in cycle notation.
  //!
  //! Products compose right to left: (a * b)(i) = a(b(i)), so that
  //! conjugation reads x * y * x.inverse().
  class Permutation {
   public:
    Permutation() = default;

    explicit Permutation(std::size_t degree) : images_(degree) {
      std::iota(images_.begin(), images_.end(), Point{0});
    }

    //! Throws InputError unless `images` is a bijection on {0, ..., n-1}.
    static Permutation from_images(std::vector<Point> images) {
      std::vector<bool> seen(images.size(), false);
      for (Point p : images) {
        if (p >= images.size() || seen[p]) {
          throw InputError("image list is not a bijection");
        }
        seen[p] = true;
      }
      Permutation result;
      result.images_ = std::move(images);
      return result;
    }

    static Permutation identity(std::size_t degree) {
      return Permutation(degree);
    }

    std::size_t degree() const noexcept {
      return images_.size();
    }

    Point operator()(Point i) const noexcept {
      return images_[i];
    }

    std::span<Point const> images() const noexcept {
      return images_;
    }

    bool is_identity() const noexcept {
      for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != i) {
          return false;
        }
      }
      return true;
    }

    Permutation inverse() const {
      Permutation result(images_.size());
      for (std::size_t i = 0; i < images_.size(); ++i) {
        result.images_[images_[i]] = static_cast<Point>(i);
      }
      return result;
    }

    friend Permutation operator*(Permutation const& a, Permutation const& b) {
      Permutation result;
      result.images_.resize(b.images_.size());
      for (std::size_t i = 0; i < b.images_.size(); ++i) {
        result.images_[i] = a.images_[b.images_[i]];
      }
      return result;
    }

    Permutation pow(long long k) const {
      Permutation base = k < 0 ? inverse() : *this;
      unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k)
                                   : static_cast<unsigned long long>(k);
      Permutation result(images_.size());
      while (e != 0) {
        if (e & 1u) {
          result = result * base;
        }
        base = base * base;
        e >>= 1;
      }
      return result;
    }

    //! x * y * x^-1
    Permutation conjugate(Permutation const& y) const {
      Permutation result;
      result.images_.resize(images_.size());
      for (std::size_t i = 0; i < images_.size(); ++i) {
        result.images_[images_[i]] = images_[y.images_[i]];
      }
      return result;
    }

    //! Least common multiple of the cycle lengths.
    std::uint64_t order() const {
      std::uint64_t result = 1;
      std::vector<bool> seen(images_.size(), false);
      for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i]) {
          continue;
        }
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
          seen[j] = true;
          ++len;
        }
        result = std::lcm(result, len);
      }
      return result;
    }

    //! Sorted cycle lengths, fixed points included.
    std::vector<std::size_t> cycle_type() const {
      std::vector<std::size_t> result;
      std::vector<bool> seen(images_.size(), false);
      for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i]) {
          continue;
        }
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
          seen[j] = true;
          ++len;
        }
        result.push_back(len);
      }
      std::sort(result.begin(), result.end());
      return result;
    }

    //! Lexicographic on the image list, so the identity is the minimum.
    friend auto operator<=>(Permutation const&, Permutation const&) = default;
    friend bool operator==(Permutation const&, Permutation const&) = default;

   private:
    std::vector<Point> images_;
  };

  struct PermutationHash {
    std::size_t operator()(Permutation const& p) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (Point x : p.images()) {
        h ^= x;
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

  //! Parses disjoint cycle notation over points 1..degree, e.g. "(1,2)(3,4)".
  //! The empty string and "()" denote the identity.
  inline Permutation parse_permutation(std::string_view text,
                                       std::size_t degree) {
    if (degree > 65535) {
      throw InputError("degree too large");
    }
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    std::vector<bool> used(degree, false);

    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size()
             && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
    };
    auto read_point = [&]() -> std::size_t {
      skip_ws();
      std::size_t start = pos;
      std::size_t value = 0;
      while (pos < text.size()
             && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (value > 1000000) {
          throw InputError("point out of range in '" + std::string(text)
                           + "'");
        }
        ++pos;
      }
      if (start == pos) {
        throw InputError("expected a point in '" + std::string(text) + "'");
      }
      if (value < 1 || value > degree) {
        throw InputError("point " + std::to_string(value)
                         + " out of range 1.." + std::to_string(degree));
      }
      return value - 1;
    };

    skip_ws();
    while (pos < text.size()) {
      if (text[pos] != '(') {
        throw InputError("malformed cycle notation '" + std::string(text)
                         + "'");
      }
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        skip_ws();
        continue;
      }
      std::vector<std::size_t> cycle;
      while (true) {
        std::size_t p = read_point();
        if (used[p]) {
          throw InputError("repeated point " + std::to_string(p + 1) + " in '"
                           + std::string(text) + "'");
        }
        used[p] = true;
        cycle.push_back(p);
        skip_ws();
        if (pos >= text.size()) {
          throw InputError("unterminated cycle in '" + std::string(text)
                           + "'");
        }
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        throw InputError("malformed cycle notation '" + std::string(text)
                         + "'");
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        images[cycle[i]] = static_cast<Point>(cycle[(i + 1) % cycle.size()]);
      }
      skip_ws();
    }
    return Permutation::from_images(std::move(images));
  }

  //! Cycle notation with 1-based points, cycles led by their smallest point;
  //! the identity is "()".
  inline std::string to_string(Permutation const& p) {
    std::string out;
    std::vector<bool> seen(p.degree(), false);
    for (std::size_t i = 0; i < p.degree(); ++i) {
      if (seen[i] || p(static_cast<Point>(i)) == i) {
        continue;
      }
      out += '(';
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) {
          out += ',';
        }
        first = false;
        out += std::to_string(j + 1);
        j = p(static_cast<Point>(j));
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

}  // namespace collapse

#endif  // COLLAPSE_PERMUTATION_HPP_
