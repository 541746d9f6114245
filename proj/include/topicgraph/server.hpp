#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "topicgraph/api.hpp"

namespace topicgraph {

/// HTTP transport for Api. The Api is shared read-only by all request threads.
class Server {
public:
    explicit Server(std::shared_ptr<const Api> api,
                    std::optional<std::filesystem::path> static_dir = std::nullopt,
                    std::size_t threads = 16);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds `host:port`; port 0 picks a free port. Returns the bound port.
    /// Throws IoError when the address cannot be bound.
    int bind(const std::string& host, int port);
    /// Serves until stop(). Requires a successful bind().
    void listen();
    void stop();
    bool is_running() const;
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace topicgraph
