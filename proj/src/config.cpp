#include "topicgraph/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "topicgraph/errors.hpp"

namespace topicgraph {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s)
{
    constexpr std::string_view ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view value)
{
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("invalid value for " + std::string(key) + ": " + std::string(value));
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value)
{
    if (value == "true" || value == "yes" || value == "1") return true;
    if (value == "false" || value == "no" || value == "0") return false;
    throw ConfigError("invalid boolean for " + std::string(key) + ": " + std::string(value));
}

fs::path resolve(const fs::path& base, std::string_view value)
{
    fs::path p{std::string(value)};
    return p.is_relative() ? base / p : p;
}

}  // namespace

void AppConfig::validate() const
{
    preprocess.validate();
    lda.validate();
    keyterms.validate();
    if (port < 0 || port > 65535) throw ConfigError("serve.port must be in [0, 65535]");
}

AppConfig parse_app_config(std::string_view text, const fs::path& base_dir)
{
    AppConfig cfg;
    bool alpha_set = false;

    using Setter = std::function<void(std::string_view key, std::string_view value)>;
    const std::map<std::string, Setter, std::less<>> setters{
        {"corpus.path", [&](auto, auto v) { cfg.corpus_path = resolve(base_dir, v); }},
        {"corpus.format", [&](auto, auto v) { cfg.corpus_format = parse_corpus_format(v); }},
        {"preprocess.stopwords", [&](auto, auto v) { cfg.stopwords_path = resolve(base_dir, v); }},
        {"preprocess.min_term_length",
         [&](auto k, auto v) { cfg.preprocess.min_term_length = parse_number<std::size_t>(k, v); }},
        {"preprocess.min_doc_frequency",
         [&](auto k, auto v) { cfg.preprocess.min_doc_frequency = parse_number<std::size_t>(k, v); }},
        {"preprocess.max_doc_fraction",
         [&](auto k, auto v) { cfg.preprocess.max_doc_fraction = parse_number<double>(k, v); }},
        {"lda.num_topics", [&](auto k, auto v) { cfg.lda.num_topics = parse_number<std::size_t>(k, v); }},
        {"lda.alpha",
         [&](auto k, auto v) {
             cfg.lda.alpha = parse_number<double>(k, v);
             alpha_set = true;
         }},
        {"lda.beta", [&](auto k, auto v) { cfg.lda.beta = parse_number<double>(k, v); }},
        {"lda.iterations", [&](auto k, auto v) { cfg.lda.iterations = parse_number<std::size_t>(k, v); }},
        {"lda.burn_in", [&](auto k, auto v) { cfg.lda.burn_in = parse_number<std::size_t>(k, v); }},
        {"lda.seed", [&](auto k, auto v) { cfg.lda.seed = parse_number<std::uint64_t>(k, v); }},
        {"keyterms.candidate_pool_size",
         [&](auto k, auto v) { cfg.keyterms.candidate_pool_size = parse_number<std::size_t>(k, v); }},
        {"keyterms.score_threshold",
         [&](auto k, auto v) { cfg.keyterms.score_threshold = parse_number<double>(k, v); }},
        {"keyterms.max_per_topic",
         [&](auto k, auto v) { cfg.keyterms.max_per_topic = parse_number<std::size_t>(k, v); }},
        {"keyterms.prioritize_shared",
         [&](auto k, auto v) { cfg.keyterms.prioritize_shared = parse_bool(k, v); }},
        {"keyterms.min_corpus_frequency",
         [&](auto k, auto v) { cfg.keyterms.min_corpus_frequency = parse_number<std::uint64_t>(k, v); }},
        {"model.path", [&](auto, auto v) { cfg.model_path = resolve(base_dir, v); }},
        {"model.format", [&](auto, auto v) { cfg.model_format = parse_model_format(v); }},
        {"serve.host", [&](auto, auto v) { cfg.host = std::string(v); }},
        {"serve.port", [&](auto k, auto v) { cfg.port = parse_number<int>(k, v); }},
        {"serve.static_dir", [&](auto, auto v) { cfg.static_dir = resolve(base_dir, v); }},
    };

    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        auto line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        const auto at_line = [&](const std::string& msg) {
            return ConfigError("config line " + std::to_string(line_no) + ": " + msg);
        };

        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw at_line("unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw at_line("expected key = value");
        const auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        const std::string full = section.empty() || key.find('.') != std::string_view::npos
                                     ? std::string(key)
                                     : section + "." + std::string(key);
        const auto setter = setters.find(full);
        if (setter == setters.end()) throw at_line("unknown key " + full);
        try {
            setter->second(full, value);
        } catch (const ConfigError& e) {
            throw at_line(e.what());
        }
    }

    if (!alpha_set) cfg.lda.alpha = default_alpha(cfg.lda.num_topics);
    if (cfg.stopwords_path) cfg.preprocess.stopwords = load_stopwords(*cfg.stopwords_path);
    cfg.validate();
    return cfg;
}

AppConfig load_app_config(const fs::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read config " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_app_config(buffer.str(), file.parent_path());
}

}  // namespace topicgraph
