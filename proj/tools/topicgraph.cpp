// topicgraph: train an LDA model, export its topic-keyterm graph, or serve
// the graph and document retrieval over HTTP.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <pthread.h>

#include "CLI11.hpp"
#include "topicgraph/api.hpp"
#include "topicgraph/config.hpp"
#include "topicgraph/errors.hpp"
#include "topicgraph/graph.hpp"
#include "topicgraph/model_io.hpp"
#include "topicgraph/server.hpp"
#include "topicgraph/simd/kernels.hpp"

namespace tg = topicgraph;

namespace {

int exit_code(const tg::Error& e)
{
    if (dynamic_cast<const tg::IoError*>(&e)) return 2;
    if (dynamic_cast<const tg::ConfigError*>(&e)) return 3;
    return 1;
}

tg::AppConfig load_config(const std::string& path, std::optional<std::uint64_t> seed)
{
    auto cfg = tg::load_app_config(path);
    if (seed) cfg.lda.seed = *seed;
    return cfg;
}

int cmd_train(const std::string& config_path, std::optional<std::uint64_t> seed)
{
    const auto cfg = load_config(config_path, seed);
    std::cout << "kernels: " << tg::simd::isa_name(tg::simd::active_kernels().isa) << "\n";
    tg::run_training(cfg, std::cout);
    return 0;
}

int cmd_export(const std::string& model_path, const std::string& out_path,
               const std::string& config_path)
{
    tg::KeytermPolicy policy;
    if (!config_path.empty()) policy = tg::load_app_config(config_path).keyterms;
    const auto model = tg::load_model(model_path);
    const auto graph = tg::build_graph(model, tg::select_keyterms(model, policy));
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw tg::IoError("cannot write " + out_path);
    out << tg::export_graph(graph) << "\n";
    if (!out) throw tg::IoError("error while writing " + out_path);
    std::cout << "graph: " << graph.topics.size() << " topics, " << graph.terms.size()
              << " terms, " << graph.links.size() << " links -> " << out_path << "\n";
    return 0;
}

int cmd_serve(const std::string& config_path, std::optional<int> port)
{
    auto cfg = load_config(config_path, std::nullopt);
    if (port) cfg.port = *port;

    // Block termination signals in every thread; one thread waits for them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto api = tg::load_api(cfg);
    tg::Server server(api, cfg.static_dir);
    const int bound = server.bind(cfg.host, cfg.port);
    std::cout << "serving " << api->model().num_topics() << " topics, " << api->model().num_docs()
              << " documents on http://" << cfg.host << ":" << bound << "/" << std::endl;

    std::thread waiter([&] {
        int received = 0;
        sigwait(&signals, &received);
        server.stop();
    });
    server.listen();
    // listen() can also return on its own, so wake the waiter if it is still blocked.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    std::cout << "stopped" << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Topic model training, topic-keyterm graph export and retrieval service"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    auto* train = app.add_subcommand("train", "Ingest, tokenize, train and persist a model");
    train->add_option("--config", config_path, "Configuration file")->required();
    train->add_option("--seed", seed, "Override lda.seed");

    std::string model_path, out_path, export_config;
    auto* exp = app.add_subcommand("export-graph", "Write the topic-keyterm graph JSON");
    exp->add_option("--model", model_path, "Model file")->required();
    exp->add_option("--out", out_path, "Output graph file")->required();
    exp->add_option("--config", export_config, "Configuration file supplying the keyterm policy");

    std::string serve_config;
    std::optional<int> port;
    auto* serve = app.add_subcommand("serve", "Serve the graph and retrieval HTTP API");
    serve->add_option("--config", serve_config, "Configuration file")->required();
    serve->add_option("--port", port, "Override serve.port");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train) return cmd_train(config_path, seed);
        if (*exp) return cmd_export(model_path, out_path, export_config);
        if (*serve) return cmd_serve(serve_config, port);
    } catch (const tg::Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
