#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewifs {

// Finite word over the alphabet {0,1,2}.  Byte-per-symbol storage: words
// arising from expanding itineraries run to hundreds of symbols, so a
// packed machine integer is kept only as a hash key for short words.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<std::uint8_t> symbols);
    explicit Word(const std::string& digits); // e.g. "0211"

    static Word repeated(std::uint8_t symbol, int count);

    int size() const { return static_cast<int>(s_.size()); }
    bool empty() const { return s_.empty(); }
    std::uint8_t operator[](int i) const { return s_[static_cast<size_t>(i)]; }

    void push_back(std::uint8_t symbol);
    void pop_back();
    Word operator+(const Word& other) const;
    Word subword(int pos, int len) const;

    std::string str() const;

    // 2 bits per symbol plus a length tag; only for size() <= 31
    std::uint64_t packed() const;

    bool operator==(const Word& o) const { return s_ == o.s_; }
    bool operator!=(const Word& o) const { return s_ != o.s_; }

    const std::vector<std::uint8_t>& symbols() const { return s_; }

private:
    std::vector<std::uint8_t> s_;
};

// Read-only window into a word (the symbols from `pos` on); used to hand
// shifted itineraries to potential callbacks without copying.
struct WordView {
    const Word* word = nullptr;
    int pos = 0;
    int size() const { return word ? word->size() - pos : 0; }
    std::uint8_t operator[](int i) const { return (*word)[pos + i]; }
};

// Bitmask alphabet: bit i set <=> symbol i allowed.
constexpr unsigned kAlphabetAll = 0b111;
constexpr unsigned kAlphabetLateral = 0b101; // {0,2}

// All |mask|^n words of length n in lexicographic order.
std::vector<Word> enumerate_words(int n, unsigned alphabet_mask = kAlphabetAll);

// Streaming enumeration (lexicographic); fn(const Word&) per word.
template <class Fn>
void for_each_word(int n, unsigned alphabet_mask, Fn&& fn) {
    if (n < 1 || n > 20) throw std::invalid_argument("for_each_word: n out of [1,20]");
    Word w;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == n) { fn(static_cast<const Word&>(w)); return; }
        for (std::uint8_t s = 0; s < 3; ++s) {
            if (!(alphabet_mask & (1u << s))) continue;
            w.push_back(s);
            self(self, depth + 1);
            w.pop_back();
        }
    };
    rec(rec, 0);
}

// True iff the word contains no symbol 1: the periodic shadow of the
// exceptional set (codes of the lateral horseshoe).
bool is_exceptional(const Word& w);

struct SymbolCounts { int n0 = 0, n1 = 0, n2 = 0; };
SymbolCounts count_symbols(const Word& w);

} // namespace skewifs
