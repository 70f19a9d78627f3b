#include "skewifs/symbolic.hpp"

namespace skewifs {

Word::Word(std::vector<std::uint8_t> symbols) : s_(std::move(symbols)) {
    for (auto c : s_)
        if (c > 2) throw std::invalid_argument("Word: symbol not in {0,1,2}");
}

Word::Word(const std::string& digits) {
    s_.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '2')
            throw std::invalid_argument("Word: digit not in {0,1,2}");
        s_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
}

Word Word::repeated(std::uint8_t symbol, int count) {
    if (symbol > 2) throw std::invalid_argument("Word: symbol not in {0,1,2}");
    return Word(std::vector<std::uint8_t>(static_cast<size_t>(count), symbol));
}

void Word::push_back(std::uint8_t symbol) {
    if (symbol > 2) throw std::invalid_argument("Word: symbol not in {0,1,2}");
    s_.push_back(symbol);
}

void Word::pop_back() { s_.pop_back(); }

Word Word::operator+(const Word& other) const {
    std::vector<std::uint8_t> v = s_;
    v.insert(v.end(), other.s_.begin(), other.s_.end());
    return Word(std::move(v));
}

Word Word::subword(int pos, int len) const {
    return Word(std::vector<std::uint8_t>(s_.begin() + pos, s_.begin() + pos + len));
}

std::string Word::str() const {
    std::string out;
    out.reserve(s_.size());
    for (auto c : s_) out.push_back(static_cast<char>('0' + c));
    return out;
}

std::uint64_t Word::packed() const {
    if (s_.size() > 31)
        throw std::length_error("Word::packed: word longer than 31 symbols");
    std::uint64_t key = 0;
    for (auto c : s_) key = (key << 2) | c;
    return key | (static_cast<std::uint64_t>(s_.size()) << 58);
}

std::vector<Word> enumerate_words(int n, unsigned alphabet_mask) {
    std::vector<Word> out;
    size_t count = 1;
    const int k = __builtin_popcount(alphabet_mask & kAlphabetAll);
    for (int i = 0; i < n; ++i) count *= static_cast<size_t>(k);
    out.reserve(count);
    for_each_word(n, alphabet_mask, [&](const Word& w) { out.push_back(w); });
    return out;
}

bool is_exceptional(const Word& w) {
    for (auto c : w.symbols())
        if (c == 1) return false;
    return true;
}

SymbolCounts count_symbols(const Word& w) {
    SymbolCounts c;
    for (auto s : w.symbols()) {
        if (s == 0) ++c.n0;
        else if (s == 1) ++c.n1;
        else ++c.n2;
    }
    return c;
}

} // namespace skewifs
