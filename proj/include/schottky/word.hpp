#ifndef SCHOTTKY_WORD_HPP_
#define SCHOTTKY_WORD_HPP_

#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <string>
#include <vector>

namespace schottky {

  struct Syllable {
    std::uint32_t gen;
    int           exp;

    bool operator==(Syllable const&) const = default;
  };

  // A word in the generators of a presentation, as a product of syllables
  // g^e read left to right.
  class Word {
   public:
    Word() = default;
    Word(std::initializer_list<Syllable> s) : _s(s) {}
    explicit Word(std::vector<Syllable> s) : _s(std::move(s)) {}

    static Word generator(std::uint32_t g, int e = 1) {
      return Word({Syllable{g, e}});
    }

    std::vector<Syllable> const& syllables() const noexcept {
      return _s;
    }
    bool empty() const noexcept {
      return _s.empty();
    }
    std::size_t length() const noexcept {
      std::size_t n = 0;
      for (auto const& s : _s) {
        n += static_cast<std::size_t>(std::abs(s.exp));
      }
      return n;
    }

    Word& operator*=(Word const& w) {
      for (auto const& s : w._s) {
        push(s);
      }
      return *this;
    }
    friend Word operator*(Word a, Word const& b) {
      a *= b;
      return a;
    }

    Word inverse() const {
      Word r;
      for (auto it = _s.rbegin(); it != _s.rend(); ++it) {
        r._s.push_back({it->gen, -it->exp});
      }
      return r;
    }

    Word pow(int k) const {
      Word base = k < 0 ? inverse() : *this;
      Word r;
      for (int i = 0; i < std::abs(k); ++i) {
        r *= base;
      }
      return r;
    }

    // Merges adjacent syllables and reduces exponents modulo the generator
    // orders (0 = infinite order).
    Word reduced(std::vector<int> const& orders) const {
      Word r;
      for (auto const& s : _s) {
        r.push(s);
        r.normalize_last(orders);
      }
      return r;
    }

    bool operator==(Word const&) const = default;

    std::string to_string(std::vector<std::string> const& names) const {
      if (_s.empty()) {
        return "1";
      }
      std::string out;
      for (auto const& s : _s) {
        if (!out.empty()) {
          out += " ";
        }
        out += s.gen < names.size() ? names[s.gen]
                                    : "g" + std::to_string(s.gen);
        if (s.exp != 1) {
          out += "^" + std::to_string(s.exp);
        }
      }
      return out;
    }

   private:
    void push(Syllable s) {
      if (s.exp == 0) {
        return;
      }
      if (!_s.empty() && _s.back().gen == s.gen) {
        _s.back().exp += s.exp;
        if (_s.back().exp == 0) {
          _s.pop_back();
        }
      } else {
        _s.push_back(s);
      }
    }

    void normalize_last(std::vector<int> const& orders) {
      if (_s.empty()) {
        return;
      }
      auto& b = _s.back();
      int   o = b.gen < orders.size() ? orders[b.gen] : 0;
      if (o > 0) {
        int e = ((b.exp % o) + o) % o;
        if (2 * e > o) {
          e -= o;
        }
        b.exp = e;
      }
      if (b.exp == 0) {
        _s.pop_back();
      }
    }

    std::vector<Syllable> _s;
  };

}  // namespace schottky

#endif  // SCHOTTKY_WORD_HPP_
