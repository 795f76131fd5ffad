#include "normbank/compose.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "normbank/errors.hpp"
#include "normbank/hash.hpp"

namespace normbank {

KeywordSet KeywordSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open keyword file: " + path);
    KeywordSet kw;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        std::size_t e = line.find_last_not_of(" \t");
        std::string word = line.substr(b, e - b + 1);
        for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        kw.keywords.insert(std::move(word));
    }
    if (kw.keywords.empty()) throw UsageError("keyword set is empty: " + path);
    return kw;
}

bool is_compositional(const std::string& text, const KeywordSet& kw) {
    std::string token;
    auto check = [&]() {
        bool hit = !token.empty() && kw.keywords.count(token) > 0;
        token.clear();
        return hit;
    };
    for (char raw : text) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (std::isalnum(c) || raw == '\'') {
            token.push_back(static_cast<char>(std::tolower(c)));
        } else if (check()) {
            return true;
        }
    }
    return check();
}

Partition partition_base(const std::vector<QAInstance>& instances, const KeywordSet& kw) {
    Partition p;
    for (const auto& inst : instances) {
        if (is_compositional(inst.input, kw)) p.compositional.push_back(inst);
        else p.base.push_back(inst);
    }
    return p;
}

std::vector<QAInstance> sample_fraction(const std::vector<QAInstance>& instances,
                                        double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw UsageError("fraction must be in (0, 1]");
    std::size_t n = instances.size();
    std::size_t k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    if (k >= n) return instances;

    // Partial Fisher-Yates over indices, then restore original order.
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    Rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + rng.next_below(n - i);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(k);
    std::sort(indices.begin(), indices.end());

    std::vector<QAInstance> out;
    out.reserve(k);
    for (std::size_t idx : indices) out.push_back(instances[idx]);
    return out;
}

}  // namespace normbank
