// SPDX-License-Identifier: Apache-2.0
#include <csignal>
#include <iostream>

#include "olg/service.hpp"
#include "olg/version.hpp"

namespace {

olg::Service* g_service = nullptr;

void on_signal(int) {
    if (g_service != nullptr) g_service->stop();
}

}  // namespace

int main() {
    auto config = olg::ServiceConfig::from_env();
    olg::Service service(config);
    g_service = &service;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);

    const int port = service.bind();
    if (port < 0) {
        std::cerr << "olg-serve: cannot bind " << config.bind_address << ':' << config.port << '\n';
        return 3;
    }
    std::cerr << "olg-serve " << olg::kVersion << " listening on " << config.bind_address << ':' << port << '\n';
    return service.listen_after_bind() ? 0 : 3;
}
