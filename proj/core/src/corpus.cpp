#include "edap/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "edap/rng.hpp"

namespace edap {

namespace {

char symbol_byte(std::uint64_t v, std::int64_t alphabet) {
    return static_cast<char>(v % static_cast<std::uint64_t>(alphabet));
}

std::string random_string(Rng& rng, std::int64_t n, std::int64_t alphabet) {
    std::string s(static_cast<std::size_t>(n), '\0');
    for (auto& ch : s) ch = symbol_byte(rng.next(), alphabet);
    return s;
}

std::string hex_encode(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(s.size() * 2);
    for (unsigned char ch : s) {
        out.push_back(digits[ch >> 4]);
        out.push_back(digits[ch & 0xf]);
    }
    return out;
}

std::string hex_decode(const std::string& s) {
    if (s.size() % 2 != 0) throw std::invalid_argument("corpus: odd hex string");
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument("corpus: bad hex digit");
    };
    std::string out;
    out.reserve(s.size() / 2);
    for (std::size_t i = 0; i < s.size(); i += 2)
        out.push_back(static_cast<char>((nib(s[i]) << 4) | nib(s[i + 1])));
    return out;
}

}  // namespace

std::vector<CorpusPair> generate_corpus(const CorpusSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("corpus: n must be >= 1");
    if (spec.alphabet_size < 2 || spec.alphabet_size > 256)
        throw std::invalid_argument("corpus: alphabet size must lie in [2, 256]");
    std::vector<CorpusPair> out;
    Rng root(spec.seed);
    for (std::int64_t p = 0; p < spec.pairs; ++p) {
        Rng rng = root.split(static_cast<std::uint64_t>(p));
        CorpusPair pair;
        pair.seed = spec.seed;
        switch (spec.model) {
            case CorpusModel::UniformRandomPair: {
                pair.x = random_string(rng, spec.n, spec.alphabet_size);
                pair.y = random_string(rng, spec.n, spec.alphabet_size);
                break;
            }
            case CorpusModel::PlantedEdits: {
                pair.x = random_string(rng, spec.n, spec.alphabet_size);
                pair.y = pair.x;
                auto edits = static_cast<std::int64_t>(
                    std::llround(spec.rate * static_cast<double>(spec.n)));
                for (std::int64_t e = 0; e < edits; ++e) {
                    if (pair.y.empty()) {
                        pair.y.push_back(symbol_byte(rng.next(), spec.alphabet_size));
                        ++pair.planted;
                        continue;
                    }
                    auto pos = static_cast<std::size_t>(rng.below(pair.y.size()));
                    switch (rng.below(3)) {
                        case 0: {  // substitution with a different symbol
                            char old = pair.y[pos];
                            char repl = old;
                            while (repl == old && spec.alphabet_size > 1)
                                repl = symbol_byte(rng.next(), spec.alphabet_size);
                            pair.y[pos] = repl;
                            break;
                        }
                        case 1:  // insertion
                            pair.y.insert(pair.y.begin() + static_cast<std::ptrdiff_t>(pos),
                                          symbol_byte(rng.next(), spec.alphabet_size));
                            break;
                        default:  // deletion
                            pair.y.erase(pair.y.begin() + static_cast<std::ptrdiff_t>(pos));
                            break;
                    }
                    ++pair.planted;
                }
                break;
            }
            case CorpusModel::BlockShuffle: {
                pair.x = random_string(rng, spec.n, spec.alphabet_size);
                std::int64_t blocks = std::max<std::int64_t>(2, spec.blocks);
                std::int64_t block_len = std::max<std::int64_t>(1, spec.n / blocks);
                std::vector<std::string> chunks;
                for (std::int64_t off = 0; off < spec.n; off += block_len)
                    chunks.push_back(pair.x.substr(
                        static_cast<std::size_t>(off),
                        static_cast<std::size_t>(std::min(block_len, spec.n - off))));
                for (std::size_t i = chunks.size(); i > 1; --i)
                    std::swap(chunks[i - 1], chunks[rng.below(i)]);
                pair.y.clear();
                for (const auto& chunk : chunks) pair.y += chunk;
                break;
            }
        }
        out.push_back(std::move(pair));
    }
    return out;
}

void write_corpus(std::ostream& out, const std::vector<CorpusPair>& pairs) {
    for (const auto& p : pairs)
        out << p.x.size() << '\t' << p.seed << '\t' << hex_encode(p.x) << '\t' << hex_encode(p.y)
            << '\t' << p.planted << '\n';
}

std::vector<CorpusPair> read_corpus(std::istream& in) {
    std::vector<CorpusPair> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string len_s, seed_s, x_s, y_s, planted_s;
        if (!std::getline(ss, len_s, '\t') || !std::getline(ss, seed_s, '\t') ||
            !std::getline(ss, x_s, '\t') || !std::getline(ss, y_s, '\t') ||
            !std::getline(ss, planted_s))
            throw std::invalid_argument("corpus: malformed line '" + line + "'");
        CorpusPair p;
        p.seed = std::stoull(seed_s);
        p.x = hex_decode(x_s);
        p.y = hex_decode(y_s);
        p.planted = std::stoll(planted_s);
        if (p.x.size() != std::stoull(len_s))
            throw std::invalid_argument("corpus: length field mismatch");
        out.push_back(std::move(p));
    }
    return out;
}

CorpusModel parse_corpus_model(const std::string& name) {
    if (name == "uniform-random-pair") return CorpusModel::UniformRandomPair;
    if (name == "planted-edits") return CorpusModel::PlantedEdits;
    if (name == "block-shuffle") return CorpusModel::BlockShuffle;
    throw std::invalid_argument("corpus: unknown model '" + name + "'");
}

}  // namespace edap
