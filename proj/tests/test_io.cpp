#include "doctest.h"

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rlzap/io.hpp"

#include "generators.hpp"

using namespace rlzap;

namespace {

const std::string kRef = "ACATCATTCGAGGACAGGTATAGCTACAGTTAGAA";
const std::string kTarget = "ACATGATTCGACGACAGGTACTAGCTACAGTAGAA";

std::vector<uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

ParseParams example_params() {
    ParseParams p;
    p.delta_bits = 2;
    p.look_ahead = 4;
    p.min_explicit_length = 4;
    p.max_lit = 4;
    p.sample_interval = 64;
    p.chunk_len = 32;
    p.sigma_bits = 2;
    return p;
}

RlzapArchive<DnaAlphabet> example_archive() {
    auto s = bytes(kTarget);
    auto r = bytes(kRef);
    Parsing<uint8_t> parsing = parse<uint8_t>(s, r, example_params());
    return RlzapArchive<DnaAlphabet>::encode(parsing, r.size(), DnaAlphabet::checksum(r));
}

}  // namespace

TEST_CASE("container: round-trip preserves every query answer") {
    auto r = bytes(kRef);
    auto s = bytes(kTarget);
    auto a = example_archive();
    std::vector<uint8_t> blob = save_archive(a);
    auto b = load_rlzap<DnaAlphabet>(blob);
    CHECK(b.target_len() == a.target_len());
    CHECK(b.ref_checksum() == a.ref_checksum());
    CHECK(b.params().delta_bits == 2);
    for (size_t i = 0; i < s.size(); ++i) REQUIRE(b.access(r, i) == a.access(r, i));
    CHECK(b.extract(r, 0, s.size()) == s);
}

TEST_CASE("container: serialization is a canonical fixpoint") {
    auto a = example_archive();
    std::vector<uint8_t> once = save_archive(a);
    auto b = load_rlzap<DnaAlphabet>(once);
    std::vector<uint8_t> twice = save_archive(b);
    CHECK(once == twice);
}

TEST_CASE("container: empty-target archive round-trips") {
    auto r = bytes(kRef);
    Parsing<uint8_t> parsing = parse<uint8_t>(std::vector<uint8_t>{}, r, example_params());
    auto a = RlzapArchive<DnaAlphabet>::encode(parsing, r.size(), DnaAlphabet::checksum(r));
    std::vector<uint8_t> blob = save_archive(a);
    auto b = load_rlzap<DnaAlphabet>(blob);
    CHECK(b.target_len() == 0);
    CHECK(b.phrase_count() == 0);
}

TEST_CASE("container: every byte truncation is rejected with a format error") {
    auto a = example_archive();
    std::vector<uint8_t> blob = save_archive(a);
    for (size_t cut = 0; cut < blob.size(); ++cut) {
        std::vector<uint8_t> hurt(blob.begin(), blob.begin() + cut);
        CHECK_THROWS_AS(load_rlzap<DnaAlphabet>(hurt), FormatError);
    }
}

TEST_CASE("container: corruption classes map to distinct errors") {
    auto a = example_archive();
    std::vector<uint8_t> blob = save_archive(a);

    SUBCASE("bad magic") {
        auto hurt = blob;
        hurt[0] = 'X';
        CHECK_THROWS_AS(load_rlzap<DnaAlphabet>(hurt), BadMagicError);
    }
    SUBCASE("unknown version") {
        auto hurt = blob;
        hurt[5] = 99;
        CHECK_THROWS_AS(load_rlzap<DnaAlphabet>(hurt), UnknownVersionError);
    }
    SUBCASE("wrong scheme tag") {
        auto hurt = blob;
        hurt[6] = static_cast<uint8_t>(Scheme::Gdc);
        CHECK_THROWS_AS(load_rlzap<DnaAlphabet>(hurt), FormatError);
    }
    SUBCASE("trailing garbage") {
        auto hurt = blob;
        hurt.push_back(0);
        CHECK_THROWS_AS(load_rlzap<DnaAlphabet>(hurt), FormatError);
    }
}

TEST_CASE("container info: header fields and section table") {
    auto a = example_archive();
    std::vector<uint8_t> blob = save_archive(a);
    ContainerInfo info = read_container_info(blob);
    CHECK(info.scheme == Scheme::Rlzap);
    CHECK(info.alphabet_tag == DnaAlphabet::kTag);
    CHECK(info.target_len == 35);
    CHECK(info.ref_len == 35);
    CHECK(info.params.look_ahead == 4);
    CHECK(info.adaptive_width_note == 3);  // ceil(log2(4)) + 1
    REQUIRE(info.sections.size() == 6);
    uint64_t section_bytes = 0;
    for (const auto& e : info.sections) {
        CHECK(e.length > 8);
        section_bytes += e.length;
    }
    CHECK(info.header_bytes + section_bytes == blob.size());
}

TEST_CASE("container: baseline schemes round-trip") {
    std::mt19937_64 rng(139);
    auto r = gen::random_dna(rng, 400);
    gen::MutationProfile prof;
    prof.substitution_rate = 0.04;
    auto s = gen::mutate_dna(r, rng, prof);
    uint64_t ck = DnaAlphabet::checksum(r);

    auto classic = RlzClassic<DnaAlphabet>::build(s, r);
    auto blob1 = save_archive(classic, ck, r.size());
    auto c2 = load_rlz<DnaAlphabet>(blob1);
    for (size_t j = 0; j < s.size(); j += 3) REQUIRE(c2.access(r, j) == s[j]);
    CHECK(read_container_info(blob1).scheme == Scheme::Rlz);

    auto gdc = GdcParse<DnaAlphabet>::build(s, r);
    auto blob2 = save_archive(gdc, ck);
    auto g2 = load_gdc<DnaAlphabet>(blob2);
    for (size_t j = 0; j < s.size(); j += 3) REQUIRE(g2.access(r, j) == s[j]);

    auto rel = RelPtrParse<DnaAlphabet>::build(gdc);
    auto blob3 = save_archive(rel, ck, r.size());
    auto rel2 = load_relptr<DnaAlphabet>(blob3);
    for (size_t j = 0; j < s.size(); j += 3) REQUIRE(rel2.access(r, j) == s[j]);

    // canonical fixpoint holds for baselines too
    CHECK(save_archive(load_rlz<DnaAlphabet>(blob1), ck, r.size()) == blob1);
    CHECK(save_archive(load_gdc<DnaAlphabet>(blob2), ck) == blob2);
    CHECK(save_archive(load_relptr<DnaAlphabet>(blob3), ck, r.size()) == blob3);

    // truncation fuzzing over a coarser grid for each scheme
    for (size_t cut = 0; cut < blob2.size(); cut += 7)
        CHECK_THROWS_AS(load_gdc<DnaAlphabet>({blob2.data(), cut}), FormatError);
    for (size_t cut = 0; cut < blob3.size(); cut += 7)
        CHECK_THROWS_AS(load_relptr<DnaAlphabet>({blob3.data(), cut}), FormatError);
}

TEST_CASE("container: int alphabet archive round-trips") {
    std::mt19937_64 rng(149);
    auto r = gen::random_i32(rng, 500);
    gen::MutationProfile prof;
    prof.substitution_rate = 0.05;
    auto s = gen::mutate_i32(r, rng, prof);
    ParseParams p = Int32Alphabet::default_params();
    auto a = RlzapArchive<Int32Alphabet>::encode(parse<int32_t>(s, r, p), r.size(),
                                                 Int32Alphabet::checksum(r));
    auto blob = save_archive(a);
    auto b = load_rlzap<Int32Alphabet>(blob);
    CHECK(b.extract(r, 0, s.size()) == s);
    CHECK(read_container_info(blob).alphabet_tag == Int32Alphabet::kTag);
    // loading under the wrong alphabet is refused
    CHECK_THROWS_AS(load_rlzap<DnaAlphabet>(blob), FormatError);
}

TEST_CASE("dataset ingestion: dna bytes") {
    std::string path = "/tmp/rlzap_test_dna.txt";
    write_file_bytes(path, bytes("acgtN"));
    auto seq = read_dna_dataset(path);
    CHECK(seq == bytes("ACGTN"));

    write_file_bytes(path, bytes("ACGU"));
    CHECK_THROWS_AS(read_dna_dataset(path), IngestError);
    try {
        read_dna_dataset(path);
    } catch (const IngestError& e) {
        CHECK(std::string(e.what()).find("offset 3") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("dataset ingestion: u32 little-endian arrays") {
    std::string path = "/tmp/rlzap_test_i32.bin";
    write_file_bytes(path, std::vector<uint8_t>{0, 0, 0, 0});
    auto seq = read_i32_dataset(path);
    REQUIRE(seq.size() == 1);
    CHECK(seq[0] == 0);

    std::vector<int32_t> values = {-1, 7, 1 << 20, -42};
    write_file_bytes(path, i32_to_bytes(values));
    CHECK(read_i32_dataset(path) == values);

    write_file_bytes(path, std::vector<uint8_t>{1, 2, 3});
    CHECK_THROWS_AS(read_i32_dataset(path), IngestError);
    std::remove(path.c_str());
}

TEST_CASE("dataset ingestion: missing file") {
    CHECK_THROWS_AS(read_dna_dataset("/tmp/definitely_not_here_rlzap"), IngestError);
}
