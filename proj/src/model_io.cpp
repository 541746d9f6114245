#include "topicgraph/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "topicgraph/errors.hpp"

namespace topicgraph {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// Binary layout: magic, u32 version, u64 header length, JSON header with all
// non-array fields, then the float arrays as little-endian IEEE-754 doubles in
// the order written by write_arrays().
constexpr char binary_magic[8] = {'T', 'G', 'M', 'O', 'D', 'E', 'L', '\0'};

ordered_json matrix_to_json(const Matrix& m)
{
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        const auto row = m.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows, std::size_t expect_rows, std::size_t expect_cols,
                        const char* name)
{
    if (!rows.is_array() || rows.size() != expect_rows) {
        throw FormatError(std::string("model field \"") + name + "\" has the wrong number of rows");
    }
    Matrix m(expect_rows, expect_cols);
    for (std::size_t r = 0; r < expect_rows; ++r) {
        const auto& row = rows[r];
        if (!row.is_array() || row.size() != expect_cols) {
            throw FormatError(std::string("model field \"") + name + "\" has a row of the wrong length");
        }
        for (std::size_t c = 0; c < expect_cols; ++c) m(r, c) = row[c].get<double>();
    }
    return m;
}

std::vector<double> vector_from_json(const json& values, std::size_t expect, const char* name)
{
    if (!values.is_array() || values.size() != expect) {
        throw FormatError(std::string("model field \"") + name + "\" has the wrong length");
    }
    return values.get<std::vector<double>>();
}

const json& field(const json& obj, const char* name)
{
    const auto it = obj.find(name);
    if (it == obj.end()) throw FormatError(std::string("model is missing field \"") + name + "\"");
    return *it;
}

ordered_json header_json(const TopicModel& model)
{
    const auto& cfg = model.config;
    ordered_json out;
    out["model_version"] = model_version;
    out["config"] = {
        {"num_topics", cfg.num_topics}, {"alpha", cfg.alpha}, {"beta", cfg.beta},
        {"iterations", cfg.iterations}, {"burn_in", cfg.burn_in}, {"seed", cfg.seed},
    };
    out["vocabulary"] = {
        {"terms", model.vocabulary.terms()},
        {"doc_frequency", model.vocabulary.doc_frequency()},
        {"corpus_frequency", model.vocabulary.corpus_frequency()},
    };
    out["documents"] = {{"ids", model.doc_ids}, {"lengths", model.doc_lengths}};
    out["total_tokens"] = model.total_tokens;
    out["snapshots"] = model.snapshots;
    return out;
}

TopicModel header_from_json(const json& doc)
{
    if (!doc.is_object()) throw FormatError("model document is not a JSON object");
    const auto& version = field(doc, "model_version");
    if (!version.is_number_integer() || version.get<int>() != model_version) {
        throw FormatError("unsupported model_version " + version.dump());
    }

    TopicModel model;
    const auto& cfg = field(doc, "config");
    model.config.num_topics = field(cfg, "num_topics").get<std::size_t>();
    model.config.alpha = field(cfg, "alpha").get<double>();
    model.config.beta = field(cfg, "beta").get<double>();
    model.config.iterations = field(cfg, "iterations").get<std::size_t>();
    model.config.burn_in = field(cfg, "burn_in").get<std::size_t>();
    model.config.seed = field(cfg, "seed").get<std::uint64_t>();
    try {
        model.config.validate();
    } catch (const ConfigError& e) {
        throw FormatError(std::string("model config is invalid: ") + e.what());
    }

    const auto& vocab = field(doc, "vocabulary");
    model.vocabulary = Vocabulary(field(vocab, "terms").get<std::vector<std::string>>(),
                                  field(vocab, "doc_frequency").get<std::vector<std::uint32_t>>(),
                                  field(vocab, "corpus_frequency").get<std::vector<std::uint64_t>>());

    const auto& docs = field(doc, "documents");
    model.doc_ids = field(docs, "ids").get<std::vector<std::string>>();
    model.doc_lengths = field(docs, "lengths").get<std::vector<std::uint32_t>>();
    if (model.doc_ids.size() != model.doc_lengths.size()) {
        throw FormatError("model document ids and lengths differ in size");
    }
    model.total_tokens = field(doc, "total_tokens").get<std::uint64_t>();
    model.snapshots = field(doc, "snapshots").get<std::size_t>();
    return model;
}

template <class Model, class F>
void for_each_array(Model& model, F&& f)
{
    f(model.phi.data);
    f(model.theta.data);
    f(model.prevalence);
    f(model.term_marginal);
    f(model.topic_term_counts.data);
    f(model.doc_topic_counts.data);
    f(model.topic_counts);
}

void size_arrays(TopicModel& model)
{
    const std::size_t K = model.config.num_topics;
    const std::size_t V = model.vocabulary.size();
    const std::size_t D = model.doc_ids.size();
    model.phi = Matrix(K, V);
    model.theta = Matrix(D, K);
    model.prevalence.assign(K, 0.0);
    model.term_marginal.assign(V, 0.0);
    model.topic_term_counts = Matrix(K, V);
    model.doc_topic_counts = Matrix(D, K);
    model.topic_counts.assign(K, 0.0);
}

void append_le(std::string& out, std::uint64_t bits, std::size_t bytes)
{
    for (std::size_t i = 0; i < bytes; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

std::uint64_t read_le(std::string_view bytes, std::size_t& pos, std::size_t width)
{
    if (pos + width > bytes.size()) throw FormatError("binary model is truncated");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
    }
    pos += width;
    return v;
}

std::string serialize_binary(const TopicModel& model)
{
    const std::string header = header_json(model).dump();
    std::string out(binary_magic, sizeof binary_magic);
    append_le(out, model_version, 4);
    append_le(out, header.size(), 8);
    out += header;
    for_each_array(model, [&](const std::vector<double>& values) {
        for (double v : values) append_le(out, std::bit_cast<std::uint64_t>(v), 8);
    });
    return out;
}

TopicModel parse_binary(std::string_view bytes)
{
    std::size_t pos = sizeof binary_magic;
    const auto version = read_le(bytes, pos, 4);
    if (version != model_version) throw FormatError("unsupported binary model version " + std::to_string(version));
    const auto header_len = read_le(bytes, pos, 8);
    if (pos + header_len > bytes.size()) throw FormatError("binary model header is truncated");
    json header;
    try {
        header = json::parse(bytes.substr(pos, header_len));
    } catch (const json::exception& e) {
        throw FormatError(std::string("binary model header is not valid JSON: ") + e.what());
    }
    pos += header_len;

    auto model = header_from_json(header);
    size_arrays(model);
    for_each_array(model, [&](std::vector<double>& values) {
        for (double& v : values) v = std::bit_cast<double>(read_le(bytes, pos, 8));
    });
    if (pos != bytes.size()) throw FormatError("binary model has trailing bytes");
    return model;
}

}  // namespace

ModelFormat parse_model_format(std::string_view name)
{
    if (name == "json") return ModelFormat::json;
    if (name == "binary") return ModelFormat::binary;
    throw ConfigError("unknown model format: " + std::string(name));
}

ordered_json model_to_json(const TopicModel& model)
{
    auto out = header_json(model);
    out["phi"] = matrix_to_json(model.phi);
    out["theta"] = matrix_to_json(model.theta);
    out["prevalence"] = model.prevalence;
    out["term_marginal"] = model.term_marginal;
    out["counts"] = {
        {"topic_term", matrix_to_json(model.topic_term_counts)},
        {"doc_topic", matrix_to_json(model.doc_topic_counts)},
        {"topic", model.topic_counts},
    };
    return out;
}

TopicModel model_from_json(const json& doc)
{
    try {
        auto model = header_from_json(doc);
        const std::size_t K = model.config.num_topics;
        const std::size_t V = model.vocabulary.size();
        const std::size_t D = model.doc_ids.size();
        model.phi = matrix_from_json(field(doc, "phi"), K, V, "phi");
        model.theta = matrix_from_json(field(doc, "theta"), D, K, "theta");
        model.prevalence = vector_from_json(field(doc, "prevalence"), K, "prevalence");
        model.term_marginal = vector_from_json(field(doc, "term_marginal"), V, "term_marginal");
        const auto& counts = field(doc, "counts");
        model.topic_term_counts = matrix_from_json(field(counts, "topic_term"), K, V, "counts.topic_term");
        model.doc_topic_counts = matrix_from_json(field(counts, "doc_topic"), D, K, "counts.doc_topic");
        model.topic_counts = vector_from_json(field(counts, "topic"), K, "counts.topic");
        return model;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model: ") + e.what());
    }
}

std::string serialize_model(const TopicModel& model, ModelFormat format)
{
    if (format == ModelFormat::binary) return serialize_binary(model);
    return model_to_json(model).dump(1) + "\n";
}

TopicModel parse_model(std::string_view bytes)
{
    if (bytes.size() >= sizeof binary_magic
        && std::memcmp(bytes.data(), binary_magic, sizeof binary_magic) == 0) {
        try {
            return parse_binary(bytes);
        } catch (const json::exception& e) {
            throw FormatError(std::string("malformed binary model: ") + e.what());
        }
    }
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("model file is not valid JSON: ") + e.what());
    }
    return model_from_json(doc);
}

void save_model(const TopicModel& model, const std::filesystem::path& path, ModelFormat format)
{
    const auto bytes = serialize_model(model, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("error while writing " + path.string());
}

TopicModel load_model(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read model " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

}  // namespace topicgraph
