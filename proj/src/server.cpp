#include "topicgraph/server.hpp"

#include "httplib.h"
#include "topicgraph/errors.hpp"

namespace topicgraph {

namespace {

void reply(httplib::Response& res, const HttpResponse& out)
{
    res.status = out.status;
    res.set_content(out.body, out.content_type);
}

}  // namespace

struct Server::Impl {
    std::shared_ptr<const Api> api;
    httplib::Server http;
};

Server::Server(std::shared_ptr<const Api> api, std::optional<std::filesystem::path> static_dir,
               std::size_t threads)
    : impl_(std::make_unique<Impl>())
{
    impl_->api = std::move(api);
    impl_->http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    // SO_REUSEADDR only: the library default adds SO_REUSEPORT, which lets a
    // second server bind a port that is already serving.
    impl_->http.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });

    const Api* a = impl_->api.get();
    auto& http = impl_->http;
    http.Get("/api/graph", [a](const httplib::Request&, httplib::Response& res) { reply(res, a->graph()); });
    http.Get(R"(/api/topics/([^/]+))", [a](const httplib::Request& req, httplib::Response& res) {
        reply(res, a->topic(req.matches[1].str()));
    });
    http.Get("/api/rank", [a](const httplib::Request& req, httplib::Response& res) {
        const auto nodes = req.has_param("nodes") ? std::optional<std::string>(req.get_param_value("nodes"))
                                                  : std::nullopt;
        const auto limit = req.has_param("limit") ? std::optional<std::string>(req.get_param_value("limit"))
                                                  : std::nullopt;
        reply(res, a->rank(nodes ? std::optional<std::string_view>(*nodes) : std::nullopt,
                           limit ? std::optional<std::string_view>(*limit) : std::nullopt));
    });
    http.Get(R"(/api/document/(.+))", [a](const httplib::Request& req, httplib::Response& res) {
        reply(res, a->document(req.matches[1].str()));
    });

    if (static_dir) {
        if (!http.set_mount_point("/", static_dir->string())) {
            throw IoError("static asset directory not found: " + static_dir->string());
        }
    }
    http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (res.body.empty() && req.path.starts_with("/api/")) {
            res.set_content(error_json("not_found", "no such endpoint: " + req.path), "application/json");
        }
    });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port)
{
    int bound = port;
    if (port == 0) {
        bound = impl_->http.bind_to_any_port(host);
        if (bound < 0) throw IoError("cannot bind " + host);
    } else if (!impl_->http.bind_to_port(host, port)) {
        throw IoError("cannot bind " + host + ":" + std::to_string(port) + " (address in use?)");
    }
    return bound;
}

void Server::listen()
{
    impl_->http.listen_after_bind();
}

void Server::stop()
{
    if (impl_->http.is_running()) impl_->http.stop();
}

bool Server::is_running() const { return impl_->http.is_running(); }

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace topicgraph
