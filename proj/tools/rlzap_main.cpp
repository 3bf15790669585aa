// Command-line front end: compress a target against a reference with one of
// the four schemes, extract ranges from an archive without decompressing it,
// inspect containers, and benchmark extraction latency.

#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rlzap/bench.hpp"
#include "rlzap/rlzap.hpp"

using nlohmann::json;
using namespace rlzap;

namespace {

// Exit codes by error class.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIngest = 2;
constexpr int kExitFormat = 3;
constexpr int kExitChecksum = 4;
constexpr int kExitRange = 5;
constexpr int kExitInternal = 10;

struct CompressOptions {
    std::string scheme = "rlzap";
    std::string ref_path;
    std::vector<std::string> input_paths;
    std::string output_path;
    std::string alphabet = "dna";
    bool concat = false;
    bool json_out = false;
    // -1 means "not set, take the alphabet default"
    int64_t look_ahead = -1;
    int64_t min_explicit = -1;
    int64_t delta_bits = -1;
    int64_t max_lit = -1;
    int64_t sample_interval = -1;
    int64_t chunk_len = -1;
};

struct ExtractOptions {
    std::string archive_path;
    std::string ref_path;
    uint64_t pos = 1;  // 1-based on the command line
    uint64_t len = 0;
};

struct BenchOptions {
    std::vector<std::string> archive_paths;
    std::string ref_path;
    std::vector<uint64_t> lengths = {1, 4, 16, 64, 256, 1024};
    uint64_t queries = 1ull << 20;
    uint64_t seed = 42;
    bool json_out = false;
};

struct InfoOptions {
    std::string archive_path;
    bool json_out = false;
};

ParseParams resolve_params(const CompressOptions& o, ParseParams base) {
    if (o.look_ahead >= 0) base.look_ahead = static_cast<uint32_t>(o.look_ahead);
    if (o.min_explicit >= 0) base.min_explicit_length = static_cast<uint32_t>(o.min_explicit);
    if (o.delta_bits >= 0) base.delta_bits = static_cast<uint32_t>(o.delta_bits);
    if (o.max_lit >= 0) base.max_lit = static_cast<uint32_t>(o.max_lit);
    if (o.sample_interval >= 0) base.sample_interval = static_cast<uint32_t>(o.sample_interval);
    if (o.chunk_len >= 0) base.chunk_len = static_cast<uint32_t>(o.chunk_len);
    base.validate();
    return base;
}

json stats_to_json(const ArchiveStats& st) {
    return json{{"target_len", st.target_len},
                {"phrases", st.phrase_count},
                {"explicit_phrases", st.explicit_count},
                {"adaptive_phrases", st.adaptive_count},
                {"literals", st.literal_count},
                {"phrase_bv_bits", st.phrase_bv_bits},
                {"explicit_bv_bits", st.explicit_bv_bits},
                {"explicit_ptr_bits", st.explicit_ptr_bits},
                {"adaptive_delta_bits", st.adaptive_delta_bits},
                {"counter_bits", st.counter_bits},
                {"literal_bits", st.literal_bits},
                {"bits_per_symbol", st.bits_per_symbol()}};
}

template <typename Alphabet>
std::vector<typename Alphabet::symbol_type> load_sequence(const std::string& path);

template <>
std::vector<uint8_t> load_sequence<DnaAlphabet>(const std::string& path) {
    return read_dna_dataset(path);
}

template <>
std::vector<int32_t> load_sequence<Int32Alphabet>(const std::string& path) {
    return read_i32_dataset(path);
}

template <typename Alphabet>
int run_compress_typed(const CompressOptions& o) {
    using Sym = typename Alphabet::symbol_type;
    std::vector<Sym> reference = load_sequence<Alphabet>(o.ref_path);
    std::vector<Sym> target;
    for (const std::string& path : o.input_paths) {
        std::vector<Sym> part = load_sequence<Alphabet>(path);
        target.insert(target.end(), part.begin(), part.end());
    }
    ParseParams params = resolve_params(o, Alphabet::default_params());
    uint64_t checksum = Alphabet::checksum(reference);

    std::vector<uint8_t> blob;
    uint64_t phrases = 0, explicit_phrases = 0, literals = 0;
    json extra;
    if (o.scheme == "rlzap") {
        Parsing<Sym> parsing = parse<Sym>(target, reference, params);
        auto archive = RlzapArchive<Alphabet>::encode(parsing, reference.size(), checksum);
        ArchiveStats st = archive.stats();
        phrases = st.phrase_count;
        explicit_phrases = st.explicit_count;
        literals = st.literal_count;
        extra = stats_to_json(st);
        blob = save_archive(archive);
    } else {
        MatchingStatistics ms = matching_statistics<Sym>(target, reference);
        if (o.scheme == "rlz") {
            auto x = RlzClassic<Alphabet>::build(ms, target, reference.size());
            phrases = x.phrase_count();
            blob = save_archive(x, checksum, reference.size(), params);
        } else if (o.scheme == "gdc") {
            auto x = GdcParse<Alphabet>::build(ms, target, reference.size(), params);
            phrases = x.phrase_count();
            literals = phrases;
            blob = save_archive(x, checksum, params);
        } else {  // relptr
            auto g = GdcParse<Alphabet>::build(ms, target, reference.size(), params);
            auto x = RelPtrParse<Alphabet>::build(g, params);
            phrases = x.phrase_count();
            literals = phrases;
            extra["pointer_runs"] = x.run_count();
            blob = save_archive(x, checksum, reference.size(), params);
        }
    }
    write_file_bytes(o.output_path, blob);

    double bits_per_symbol =
        target.empty() ? 0.0 : 8.0 * static_cast<double>(blob.size()) / target.size();
    if (o.json_out) {
        json out{{"scheme", o.scheme},
                 {"alphabet", Alphabet::kName},
                 {"input_symbols", target.size()},
                 {"reference_symbols", reference.size()},
                 {"archive_bytes", blob.size()},
                 {"bits_per_symbol", bits_per_symbol},
                 {"phrases", phrases},
                 {"explicit_phrases", explicit_phrases},
                 {"adaptive_phrases", phrases - explicit_phrases},
                 {"literals", literals}};
        if (!extra.is_null()) out["components"] = extra;
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        std::printf("scheme:            %s\n", o.scheme.c_str());
        std::printf("input symbols:     %zu\n", target.size());
        std::printf("reference symbols: %zu\n", reference.size());
        std::printf("archive bytes:     %zu\n", blob.size());
        std::printf("bits per symbol:   %.4f\n", bits_per_symbol);
        std::printf("phrases:           %" PRIu64 "\n", phrases);
        if (o.scheme == "rlzap")
            std::printf("  explicit: %" PRIu64 "   adaptive: %" PRIu64 "\n", explicit_phrases,
                        phrases - explicit_phrases);
        std::printf("literals:          %" PRIu64 "\n", literals);
        std::printf("wrote %s\n", o.output_path.c_str());
    }
    return kExitOk;
}

int run_compress(const CompressOptions& o) {
    if (o.input_paths.size() > 1 && !o.concat)
        throw InvalidInputError("multiple --input files require --concat");
    if (o.alphabet == "dna") return run_compress_typed<DnaAlphabet>(o);
    if (o.alphabet == "i32") return run_compress_typed<Int32Alphabet>(o);
    throw InvalidInputError("unknown alphabet: " + o.alphabet);
}

template <typename Alphabet>
int run_extract_typed(const ExtractOptions& o, const ContainerInfo& info,
                      std::span<const uint8_t> blob) {
    using Sym = typename Alphabet::symbol_type;
    std::vector<Sym> reference = load_sequence<Alphabet>(o.ref_path);
    if (Alphabet::checksum(reference) != info.ref_checksum || reference.size() != info.ref_len)
        throw ChecksumMismatchError("archive was built against a different reference");
    if (o.pos < 1 || o.len > info.target_len || o.pos - 1 > info.target_len - o.len)
        throw RangeError("requested range is outside the target");
    uint64_t start = o.pos - 1;

    std::vector<Sym> piece;
    switch (info.scheme) {
        case Scheme::Rlzap:
            piece = load_rlzap<Alphabet>(blob).extract(reference, start, o.len);
            break;
        case Scheme::Rlz:
            piece = load_rlz<Alphabet>(blob).extract(reference, start, o.len);
            break;
        case Scheme::Gdc:
            piece = load_gdc<Alphabet>(blob).extract(reference, start, o.len);
            break;
        case Scheme::RelPtr:
            piece = load_relptr<Alphabet>(blob).extract(reference, start, o.len);
            break;
    }
    if constexpr (std::is_same_v<Sym, uint8_t>) {
        std::fwrite(piece.data(), 1, piece.size(), stdout);
    } else {
        std::vector<uint8_t> bytes = i32_to_bytes(piece);
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    }
    return kExitOk;
}

int run_extract(const ExtractOptions& o) {
    std::vector<uint8_t> blob = read_file_bytes(o.archive_path);
    ContainerInfo info = read_container_info(blob);
    if (info.alphabet_tag == DnaAlphabet::kTag) return run_extract_typed<DnaAlphabet>(o, info, blob);
    return run_extract_typed<Int32Alphabet>(o, info, blob);
}

template <typename Alphabet>
std::vector<BenchPoint> bench_one(const BenchOptions& o, const ContainerInfo& info,
                                  std::span<const uint8_t> blob,
                                  const std::vector<typename Alphabet::symbol_type>& reference) {
    BenchConfig cfg;
    cfg.lengths = o.lengths;
    cfg.query_budget = o.queries;
    cfg.seed = o.seed;
    std::span<const typename Alphabet::symbol_type> ref(reference);
    switch (info.scheme) {
        case Scheme::Rlzap: {
            auto a = load_rlzap<Alphabet>(blob);
            a.require_reference(ref);
            return bench_extraction(a, ref, cfg);
        }
        case Scheme::Rlz:
            return bench_extraction(load_rlz<Alphabet>(blob), ref, cfg);
        case Scheme::Gdc:
            return bench_extraction(load_gdc<Alphabet>(blob), ref, cfg);
        case Scheme::RelPtr:
            return bench_extraction(load_relptr<Alphabet>(blob), ref, cfg);
    }
    return {};
}

int run_bench(const BenchOptions& o) {
    struct Row {
        std::string name;
        std::string scheme;
        std::vector<BenchPoint> points;
    };
    std::vector<Row> rows;
    std::vector<uint8_t> dna_ref_cache;
    std::vector<int32_t> i32_ref_cache;
    for (const std::string& path : o.archive_paths) {
        std::vector<uint8_t> blob = read_file_bytes(path);
        ContainerInfo info = read_container_info(blob);
        Row row;
        row.name = path;
        row.scheme = scheme_name(info.scheme);
        if (info.alphabet_tag == DnaAlphabet::kTag) {
            if (dna_ref_cache.empty()) dna_ref_cache = read_dna_dataset(o.ref_path);
            if (DnaAlphabet::checksum(dna_ref_cache) != info.ref_checksum)
                throw ChecksumMismatchError(path + ": archive reference mismatch");
            row.points = bench_one<DnaAlphabet>(o, info, blob, dna_ref_cache);
        } else {
            if (i32_ref_cache.empty()) i32_ref_cache = read_i32_dataset(o.ref_path);
            if (Int32Alphabet::checksum(i32_ref_cache) != info.ref_checksum)
                throw ChecksumMismatchError(path + ": archive reference mismatch");
            row.points = bench_one<Int32Alphabet>(o, info, blob, i32_ref_cache);
        }
        rows.push_back(std::move(row));
    }

    if (o.json_out) {
        json out = json::array();
        for (const Row& row : rows) {
            json points = json::array();
            for (const BenchPoint& p : row.points)
                points.push_back(json{{"length", p.length},
                                      {"queries", p.queries},
                                      {"ns_per_symbol", p.ns_per_symbol}});
            out.push_back(json{{"archive", row.name}, {"scheme", row.scheme}, {"points", points}});
        }
        std::printf("%s\n", out.dump(2).c_str());
        return kExitOk;
    }

    std::printf("mean extraction time per symbol (ns), seed %" PRIu64 ", %" PRIu64
                " symbols per length\n",
                o.seed, o.queries);
    std::printf("%-32s %-8s", "archive", "scheme");
    for (uint64_t len : o.lengths) std::printf(" %9" PRIu64, len);
    std::printf("\n");
    for (const Row& row : rows) {
        std::printf("%-32s %-8s", row.name.c_str(), row.scheme.c_str());
        for (const BenchPoint& p : row.points) std::printf(" %9.2f", p.ns_per_symbol);
        std::printf("\n");
    }
    return kExitOk;
}

int run_info(const InfoOptions& o) {
    std::vector<uint8_t> blob = read_file_bytes(o.archive_path);
    ContainerInfo info = read_container_info(blob);

    json sections = json::array();
    for (const SectionEntry& e : info.sections)
        sections.push_back(json{{"id", e.id},
                                {"name", section_name(e.id)},
                                {"offset", e.offset},
                                {"bytes", e.length}});
    json out{{"scheme", scheme_name(info.scheme)},
             {"alphabet", info.alphabet_tag == 0 ? "dna" : "i32"},
             {"version", info.version},
             {"target_len", info.target_len},
             {"ref_len", info.ref_len},
             {"ref_checksum", info.ref_checksum},
             {"file_bytes", info.file_bytes},
             {"header_bytes", info.header_bytes},
             {"params",
              json{{"delta_bits", info.params.delta_bits},
                   {"look_ahead", info.params.look_ahead},
                   {"min_explicit_length", info.params.min_explicit_length},
                   {"max_lit", info.params.max_lit},
                   {"sample_interval", info.params.sample_interval},
                   {"chunk_len", info.params.chunk_len},
                   {"sigma_bits", info.params.sigma_bits},
                   {"adaptive_width_note", info.adaptive_width_note}}},
             {"sections", sections}};

    if (info.scheme == Scheme::Rlzap) {
        ArchiveStats st = info.alphabet_tag == DnaAlphabet::kTag
                              ? load_rlzap<DnaAlphabet>(blob).stats()
                              : load_rlzap<Int32Alphabet>(blob).stats();
        out["stats"] = stats_to_json(st);
    }

    if (o.json_out) {
        std::printf("%s\n", out.dump(2).c_str());
        return kExitOk;
    }
    std::printf("scheme:    %s\n", scheme_name(info.scheme));
    std::printf("alphabet:  %s\n", info.alphabet_tag == 0 ? "dna" : "i32");
    std::printf("version:   %u\n", info.version);
    std::printf("target:    %" PRIu64 " symbols\n", info.target_len);
    std::printf("reference: %" PRIu64 " symbols, checksum %016" PRIx64 "\n", info.ref_len,
                info.ref_checksum);
    std::printf("file:      %" PRIu64 " bytes (header %" PRIu64 ")\n", info.file_bytes,
                info.header_bytes);
    std::printf("params:    delta_bits=%u look_ahead=%u min_explicit=%u max_lit=%u\n",
                info.params.delta_bits, info.params.look_ahead, info.params.min_explicit_length,
                info.params.max_lit);
    std::printf("           sample_interval=%u chunk_len=%u sigma_bits=%u width_note=%u\n",
                info.params.sample_interval, info.params.chunk_len, info.params.sigma_bits,
                info.adaptive_width_note);
    std::printf("sections:\n");
    for (const SectionEntry& e : info.sections)
        std::printf("  %-16s offset %-8" PRIu64 " %-8" PRIu64 " bytes\n", section_name(e.id),
                    e.offset, e.length);
    if (out.contains("stats")) {
        const json& st = out["stats"];
        std::printf("phrases:   %" PRIu64 " (%" PRIu64 " explicit, %" PRIu64 " adaptive)\n",
                    st["phrases"].get<uint64_t>(), st["explicit_phrases"].get<uint64_t>(),
                    st["adaptive_phrases"].get<uint64_t>());
        std::printf("literals:  %" PRIu64 "\n", st["literals"].get<uint64_t>());
        std::printf("payload:   %.4f bits per symbol\n", st["bits_per_symbol"].get<double>());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reference-relative compressor with random access"};
    app.require_subcommand(1);

    CompressOptions copt;
    CLI::App* compress = app.add_subcommand("compress", "compress a target against a reference");
    compress->add_option("--scheme", copt.scheme, "rlzap | rlz | gdc | relptr")
        ->check(CLI::IsMember({"rlzap", "rlz", "gdc", "relptr"}));
    compress->add_option("--ref", copt.ref_path, "reference file")->required();
    compress->add_option("--input", copt.input_paths, "target file(s)")->required();
    compress->add_option("--output", copt.output_path, "archive file to write")->required();
    compress->add_option("--alphabet", copt.alphabet, "dna | i32")
        ->check(CLI::IsMember({"dna", "i32"}));
    compress->add_flag("--concat", copt.concat, "concatenate multiple inputs in argument order");
    compress->add_option("--look-ahead", copt.look_ahead, "adaptive look-ahead window");
    compress->add_option("--min-explicit", copt.min_explicit, "minimum standalone explicit match");
    compress->add_option("--delta-bits", copt.delta_bits, "adaptive pointer width in bits");
    compress->add_option("--max-lit", copt.max_lit, "literal count width (1, 2, 4 or 8)");
    compress->add_option("--sample-interval", copt.sample_interval, "prefix-sum sampling stride");
    compress->add_option("--chunk-len", copt.chunk_len, "exception bitvector chunk length");
    compress->add_flag("--json", copt.json_out, "machine-readable report");

    ExtractOptions eopt;
    CLI::App* extract = app.add_subcommand("extract", "print a target range from an archive");
    extract->add_option("--archive", eopt.archive_path, "archive file")->required();
    extract->add_option("--ref", eopt.ref_path, "reference file")->required();
    extract->add_option("--pos", eopt.pos, "1-based start position")->required();
    extract->add_option("--len", eopt.len, "number of symbols")->required();

    BenchOptions bopt;
    CLI::App* bench = app.add_subcommand("bench", "measure extraction latency");
    bench->add_option("--archive", bopt.archive_paths, "archive file(s), one row each")->required();
    bench->add_option("--ref", bopt.ref_path, "reference file")->required();
    bench->add_option("--lengths", bopt.lengths, "extraction lengths");
    bench->add_option("--queries", bopt.queries, "symbol budget per length");
    bench->add_option("--seed", bopt.seed, "query position seed");
    bench->add_flag("--json", bopt.json_out, "machine-readable report");

    InfoOptions iopt;
    CLI::App* info = app.add_subcommand("info", "dump archive structure");
    info->add_option("--archive", iopt.archive_path, "archive file")->required();
    info->add_flag("--json", iopt.json_out, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*compress) return run_compress(copt);
        if (*extract) return run_extract(eopt);
        if (*bench) return run_bench(bopt);
        if (*info) return run_info(iopt);
        return kExitUsage;
    } catch (const ChecksumMismatchError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitChecksum;
    } catch (const RangeError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRange;
    } catch (const IngestError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIngest;
    } catch (const FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFormat;
    } catch (const CorruptError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFormat;
    } catch (const EncodingError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFormat;
    } catch (const InvalidInputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
}
