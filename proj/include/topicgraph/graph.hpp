#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "topicgraph/keyterms.hpp"
#include "topicgraph/lda.hpp"

namespace topicgraph {

inline constexpr int graph_version = 1;

/// Ten-hue qualitative palette shipped with every exported graph.
inline constexpr std::array<std::string_view, 10> qualitative_palette{
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

struct GraphStyle {
    /// radius = max(min_radius, base_radius * sqrt(prevalence))
    double base_radius = 40.0;
    double min_radius = 4.0;
};

struct TopicNode {
    std::string id;        // "T<k>"
    std::string label;     // "T<k>"
    std::string subtitle;  // top keyterm, empty when the topic has none
    double prevalence = 0.0;
    double radius = 0.0;
    int color = 0;

    bool operator==(const TopicNode&) const = default;
};

struct TermNode {
    std::string id;  // "w:<term>"
    std::string label;

    bool operator==(const TermNode&) const = default;
};

struct GraphLink {
    std::string source;  // topic node id
    std::string target;  // term node id
    double weight = 0.0;

    bool operator==(const GraphLink&) const = default;
};

struct TopicGraph {
    std::vector<std::string> palette;
    std::vector<TopicNode> topics;
    std::vector<TermNode> terms;
    std::vector<GraphLink> links;

    bool operator==(const TopicGraph&) const = default;
};

std::string topic_node_id(std::size_t topic);
std::string term_node_id(std::string_view term);

double topic_radius(double prevalence, const GraphStyle& style = {});

/// Topics by index, terms lexicographic, links by (topic index, term).
TopicGraph build_graph(const TopicModel& model, const KeytermTable& table,
                       const GraphStyle& style = {});

nlohmann::ordered_json graph_to_json(const TopicGraph& graph);
/// Compact serialization; identical graphs give identical bytes.
std::string export_graph(const TopicGraph& graph);
/// Throws FormatError.
TopicGraph parse_graph(std::string_view text);

}  // namespace topicgraph
