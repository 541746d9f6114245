#include "topicgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "topicgraph/errors.hpp"

namespace topicgraph {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string topic_node_id(std::size_t topic) { return "T" + std::to_string(topic); }

std::string term_node_id(std::string_view term) { return "w:" + std::string(term); }

double topic_radius(double prevalence, const GraphStyle& style)
{
    return std::max(style.min_radius, style.base_radius * std::sqrt(prevalence));
}

TopicGraph build_graph(const TopicModel& model, const KeytermTable& table, const GraphStyle& style)
{
    TopicGraph graph;
    graph.palette.assign(qualitative_palette.begin(), qualitative_palette.end());

    const std::size_t K = model.num_topics();
    std::map<std::string, bool> term_labels;  // ordered for lexicographic output
    for (std::size_t k = 0; k < K; ++k) {
        TopicNode node;
        node.id = topic_node_id(k);
        node.label = node.id;
        const auto& list = k < table.topics.size() ? table.topics[k] : std::vector<Keyterm>{};
        if (!list.empty()) node.subtitle = model.vocabulary.term(list.front().term);
        node.prevalence = model.prevalence[k];
        node.radius = topic_radius(node.prevalence, style);
        node.color = static_cast<int>(k % qualitative_palette.size());
        graph.topics.push_back(std::move(node));

        std::vector<std::pair<std::string_view, double>> links;
        for (const auto& kt : list) {
            const auto& term = model.vocabulary.term(kt.term);
            term_labels.emplace(term, true);
            links.emplace_back(term, kt.score);
        }
        std::sort(links.begin(), links.end());
        for (const auto& [term, weight] : links) {
            graph.links.push_back({topic_node_id(k), term_node_id(term), weight});
        }
    }
    for (const auto& [term, unused] : term_labels) {
        graph.terms.push_back({term_node_id(term), term});
    }
    return graph;
}

ordered_json graph_to_json(const TopicGraph& graph)
{
    ordered_json out;
    out["graph_version"] = graph_version;
    out["palette"] = graph.palette;
    ordered_json topics = ordered_json::array();
    for (const auto& t : graph.topics) {
        topics.push_back({{"id", t.id}, {"label", t.label}, {"subtitle", t.subtitle},
                          {"prevalence", t.prevalence}, {"radius", t.radius}, {"color", t.color}});
    }
    out["topics"] = std::move(topics);
    ordered_json terms = ordered_json::array();
    for (const auto& t : graph.terms) terms.push_back({{"id", t.id}, {"label", t.label}});
    out["terms"] = std::move(terms);
    ordered_json links = ordered_json::array();
    for (const auto& l : graph.links) {
        links.push_back({{"source", l.source}, {"target", l.target}, {"weight", l.weight}});
    }
    out["links"] = std::move(links);
    return out;
}

std::string export_graph(const TopicGraph& graph) { return graph_to_json(graph).dump(); }

TopicGraph parse_graph(std::string_view text)
{
    try {
        const auto doc = json::parse(text);
        if (doc.at("graph_version").get<int>() != graph_version) {
            throw FormatError("unsupported graph_version");
        }
        TopicGraph graph;
        graph.palette = doc.at("palette").get<std::vector<std::string>>();
        for (const auto& t : doc.at("topics")) {
            graph.topics.push_back({t.at("id").get<std::string>(), t.at("label").get<std::string>(),
                                    t.value("subtitle", std::string{}), t.at("prevalence").get<double>(),
                                    t.at("radius").get<double>(), t.at("color").get<int>()});
        }
        for (const auto& t : doc.at("terms")) {
            graph.terms.push_back({t.at("id").get<std::string>(), t.at("label").get<std::string>()});
        }
        for (const auto& l : doc.at("links")) {
            graph.links.push_back({l.at("source").get<std::string>(), l.at("target").get<std::string>(),
                                   l.at("weight").get<double>()});
        }
        return graph;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed graph document: ") + e.what());
    }
}

}  // namespace topicgraph
