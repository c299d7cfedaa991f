#pragma once

// Reference Clifford arithmetic written against the defining relations only.
// Blades are kept as explicit generator index lists; products are normalized
// by adjacent transpositions (each worth a factor of -1) and by contracting
// repeated generators with e_i e_i = -1.  Nothing here shares code with the
// library implementation.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using Word = std::vector<int>; // generator indices, 1-based

inline std::pair<int, Word> normalize_word(Word word) {
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (word[i] > word[i + 1]) {
                std::swap(word[i], word[i + 1]);
                sign = -sign;
                changed = true;
            } else if (word[i] == word[i + 1]) {
                word.erase(word.begin() + static_cast<long>(i),
                           word.begin() + static_cast<long>(i) + 2);
                sign = -sign;
                changed = true;
                break;
            }
        }
    }
    return {sign, word};
}

inline std::pair<int, Word> blade_product(const Word& a, const Word& b) {
    Word word = a;
    word.insert(word.end(), b.begin(), b.end());
    return normalize_word(std::move(word));
}

inline Word word_from_mask(unsigned mask) {
    Word w;
    for (int j = 0; j < 32; ++j) {
        if (mask & (1u << j)) w.push_back(j + 1);
    }
    return w;
}

inline unsigned mask_from_word(const Word& w) {
    unsigned mask = 0;
    for (int j : w) mask |= 1u << (j - 1);
    return mask;
}

// Dense product on coefficient maps keyed by blade mask.
inline std::map<unsigned, double> product(const std::map<unsigned, double>& a,
                                          const std::map<unsigned, double>& b) {
    std::map<unsigned, double> out;
    for (const auto& [pa, ca] : a) {
        for (const auto& [pb, cb] : b) {
            auto [sign, word] = blade_product(word_from_mask(pa), word_from_mask(pb));
            out[mask_from_word(word)] += sign * ca * cb;
        }
    }
    return out;
}

} // namespace oracle
