#include "topicgraph/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "json.hpp"
#include "topicgraph/errors.hpp"

namespace topicgraph {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr std::size_t default_title_length = 80;

std::string_view trim(std::string_view s)
{
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

// First `count` code points of `text`.
std::string utf8_prefix(std::string_view text, std::size_t count)
{
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto length = static_cast<std::int32_t>(text.size());
    std::int32_t offset = 0;
    for (std::size_t n = 0; n < count && offset < length; ++n) {
        UChar32 c;
        U8_NEXT(bytes, offset, length, c);
        (void)c;
    }
    return std::string(text.substr(0, static_cast<std::size_t>(offset)));
}

std::string default_title(std::string_view body)
{
    return utf8_prefix(trim(body), default_title_length);
}

void check_date(const std::string& date, std::size_t line)
{
    static const std::regex iso(R"(^\d{4}-\d{2}-\d{2}([T ][0-9:.]+(Z|[+-]\d{2}:?\d{2})?)?$)");
    if (!std::regex_match(date, iso)) {
        throw FormatError("date is not an ISO-8601 date: " + date, line);
    }
}

RawDocument document_from_json(const json& obj, std::size_t line)
{
    if (!obj.is_object()) throw FormatError("expected a JSON object", line);

    RawDocument doc;
    const auto id = obj.find("id");
    if (id == obj.end()) throw FormatError("missing field \"id\"", line);
    if (!id->is_string()) throw FormatError("field \"id\" must be a string", line);
    doc.id = id->get<std::string>();
    if (doc.id.empty()) throw FormatError("field \"id\" is empty", line);

    const auto body = obj.find("body");
    if (body == obj.end()) throw FormatError("missing field \"body\"", line);
    if (!body->is_string()) throw FormatError("field \"body\" must be a string", line);
    doc.body = body->get<std::string>();
    if (trim(doc.body).empty()) throw FormatError("field \"body\" is empty", line);

    if (const auto title = obj.find("title"); title != obj.end() && !title->is_null()) {
        if (!title->is_string()) throw FormatError("field \"title\" must be a string", line);
        doc.title = title->get<std::string>();
    } else {
        doc.title = default_title(doc.body);
    }

    if (const auto date = obj.find("date"); date != obj.end() && !date->is_null()) {
        if (!date->is_string()) throw FormatError("field \"date\" must be a string", line);
        doc.date = date->get<std::string>();
        check_date(*doc.date, line);
    }
    return doc;
}

void reject_duplicates(const std::vector<RawDocument>& docs)
{
    std::unordered_set<std::string_view> seen;
    for (const auto& doc : docs) {
        if (!seen.insert(doc.id).second) throw DuplicateIdError(doc.id);
    }
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("error while reading " + path.string());
    return buffer.str();
}

std::vector<RawDocument> ingest_text_dir(const fs::path& root)
{
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw IoError("not a readable directory: " + root.string());

    std::vector<fs::path> files;
    fs::recursive_directory_iterator it(root, ec), end;
    if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
    for (; it != end; it.increment(ec)) {
        if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
        if (it->is_regular_file() && it->path().extension() == ".txt") files.push_back(it->path());
    }

    std::vector<std::pair<std::string, fs::path>> named;
    named.reserve(files.size());
    for (const auto& file : files) {
        named.emplace_back(fs::relative(file, root).generic_string(), file);
    }
    std::sort(named.begin(), named.end());

    std::vector<RawDocument> docs;
    docs.reserve(named.size());
    for (const auto& [id, file] : named) {
        RawDocument doc;
        doc.id = id;
        doc.body = read_file(file);
        if (trim(doc.body).empty()) throw FormatError("document " + id + " has an empty body");
        doc.title = default_title(doc.body);
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name)
{
    if (name == "jsonl") return CorpusFormat::jsonl;
    if (name == "text-dir") return CorpusFormat::text_dir;
    throw ConfigError("unknown corpus format: " + std::string(name));
}

std::string_view corpus_format_name(CorpusFormat format) noexcept
{
    return format == CorpusFormat::jsonl ? "jsonl" : "text-dir";
}

std::vector<RawDocument> parse_jsonl(std::string_view content, std::string_view source)
{
    std::vector<RawDocument> docs;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        auto eol = content.find('\n', pos);
        if (eol == std::string_view::npos) eol = content.size();
        const auto line = content.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (trim(line).empty()) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw FormatError(std::string(source) + ": invalid JSON: " + e.what(), line_no);
        }
        docs.push_back(document_from_json(obj, line_no));
    }
    reject_duplicates(docs);
    return docs;
}

std::vector<RawDocument> ingest(const fs::path& path, CorpusFormat format)
{
    if (format == CorpusFormat::text_dir) {
        auto docs = ingest_text_dir(path);
        reject_duplicates(docs);
        return docs;
    }
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) throw IoError("cannot read " + path.string());
    return parse_jsonl(read_file(path), path.string());
}

void PreprocessConfig::validate() const
{
    if (min_term_length < 1) throw ConfigError("min_term_length must be >= 1");
    if (min_doc_frequency < 1) throw ConfigError("min_doc_frequency must be >= 1");
    if (!(max_doc_fraction > 0.0 && max_doc_fraction <= 1.0)) {
        throw ConfigError("max_doc_fraction must be in (0, 1]");
    }
}

std::unordered_set<std::string> load_stopwords(const fs::path& path)
{
    std::unordered_set<std::string> words;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        // Normalized like document text, so "And" also removes "and".
        for (auto& word : split_terms(line)) words.insert(std::move(word));
    }
    return words;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::uint32_t> doc_frequency,
                       std::vector<std::uint64_t> corpus_frequency)
    : terms_(std::move(terms)),
      doc_frequency_(std::move(doc_frequency)),
      corpus_frequency_(std::move(corpus_frequency))
{
    if (doc_frequency_.size() != terms_.size() || corpus_frequency_.size() != terms_.size()) {
        throw FormatError("vocabulary frequency arrays do not match the term list");
    }
    index_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!index_.emplace(terms_[i], static_cast<TermId>(i)).second) {
            throw FormatError("duplicate vocabulary term: " + terms_[i]);
        }
    }
}

std::optional<TermId> Vocabulary::find(std::string_view term) const
{
    const auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

TermId Vocabulary::id_of(std::string_view term) const
{
    const auto id = find(term);
    if (!id) throw UnknownTermError(std::string(term));
    return *id;
}

std::vector<std::string> split_terms(std::string_view text)
{
    std::vector<std::string> out;
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto length = static_cast<std::int32_t>(text.size());
    std::int32_t offset = 0;
    std::string current;
    while (offset < length) {
        UChar32 c;
        U8_NEXT(bytes, offset, length, c);
        if (c >= 0 && u_isalpha(c)) {
            const UChar32 lower = u_tolower(c);
            char buf[U8_MAX_LENGTH];
            std::int32_t n = 0;
            [[maybe_unused]] UBool error = false;
            U8_APPEND(reinterpret_cast<std::uint8_t*>(buf), n, U8_MAX_LENGTH, lower, error);
            current.append(buf, static_cast<std::size_t>(n));
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

TokenizedCorpus tokenize(const std::vector<RawDocument>& docs, const PreprocessConfig& config)
{
    config.validate();

    // Step 1: surface tokens per document after length and stopword filters.
    std::vector<std::vector<std::string>> surface(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (auto& term : split_terms(docs[d].body)) {
            std::int32_t code_points = 0;
            for (unsigned char ch : term) code_points += (ch & 0xC0) != 0x80;
            if (static_cast<std::size_t>(code_points) < config.min_term_length) continue;
            if (config.stopwords.contains(term)) continue;
            surface[d].push_back(std::move(term));
        }
    }

    // Step 2: document frequencies decide which terms are retained.
    std::map<std::string, std::uint32_t, std::less<>> doc_freq;
    for (const auto& tokens : surface) {
        std::unordered_set<std::string_view> seen(tokens.begin(), tokens.end());
        for (auto term : seen) {
            auto it = doc_freq.find(term);
            if (it == doc_freq.end()) it = doc_freq.emplace(std::string(term), 0).first;
            ++it->second;
        }
    }
    const double max_df = config.max_doc_fraction * static_cast<double>(docs.size());
    std::vector<std::string> terms;
    for (const auto& [term, df] : doc_freq) {
        if (df >= config.min_doc_frequency && static_cast<double>(df) <= max_df) terms.push_back(term);
    }

    std::unordered_map<std::string_view, TermId> index;
    for (std::size_t i = 0; i < terms.size(); ++i) index.emplace(terms[i], static_cast<TermId>(i));

    std::vector<TokenizedDocument> kept;
    std::vector<std::string> dropped;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        TokenizedDocument doc{docs[d].id, {}};
        for (const auto& term : surface[d]) {
            if (auto it = index.find(term); it != index.end()) doc.tokens.push_back(it->second);
        }
        if (doc.tokens.empty()) {
            dropped.push_back(docs[d].id);
        } else {
            kept.push_back(std::move(doc));
        }
    }
    if (kept.empty()) throw EmptyCorpusError("no document survived preprocessing");

    auto corpus = make_corpus(std::move(terms), std::move(kept));
    corpus.dropped = std::move(dropped);
    return corpus;
}

TokenizedCorpus make_corpus(std::vector<std::string> terms, std::vector<TokenizedDocument> docs)
{
    std::vector<std::uint32_t> df(terms.size(), 0);
    std::vector<std::uint64_t> cf(terms.size(), 0);
    std::vector<std::uint32_t> last_doc(terms.size(), 0);
    std::uint64_t total = 0;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (TermId w : docs[d].tokens) {
            if (w >= terms.size()) throw FormatError("token id out of vocabulary range");
            ++cf[w];
            // last_doc stores d + 1 so zero means "never seen"
            if (last_doc[w] != d + 1) {
                last_doc[w] = static_cast<std::uint32_t>(d + 1);
                ++df[w];
            }
        }
        total += docs[d].tokens.size();
    }
    TokenizedCorpus corpus;
    corpus.vocabulary = Vocabulary(std::move(terms), std::move(df), std::move(cf));
    corpus.documents = std::move(docs);
    corpus.total_tokens = total;
    return corpus;
}

}  // namespace topicgraph
