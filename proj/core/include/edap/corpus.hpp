#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace edap {

enum class CorpusModel { UniformRandomPair, PlantedEdits, BlockShuffle };

struct CorpusSpec {
    std::int64_t n = 256;
    std::int64_t alphabet_size = 4;
    CorpusModel model = CorpusModel::PlantedEdits;
    double rate = 0.01;       // planted-edits only
    std::int64_t blocks = 8;  // block-shuffle only
    std::uint64_t seed = 1;
    std::int64_t pairs = 1;
};

struct CorpusPair {
    std::string x;
    std::string y;
    std::int64_t planted = 0;  // applied edit operations (planted-edits model)
    std::uint64_t seed = 0;
};

std::vector<CorpusPair> generate_corpus(const CorpusSpec& spec);

// Line format: len<TAB>seed<TAB>hex(x)<TAB>hex(y)<TAB>planted
void write_corpus(std::ostream& out, const std::vector<CorpusPair>& pairs);
std::vector<CorpusPair> read_corpus(std::istream& in);

CorpusModel parse_corpus_model(const std::string& name);

}  // namespace edap
