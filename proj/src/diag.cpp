#include "nhsense/diag.hpp"

#include <iostream>
#include <mutex>
#include <unordered_set>
#include <utility>

namespace nhsense {

namespace {
std::mutex g_mutex;
std::function<void(const std::string&)> g_handler;
std::unordered_set<std::string> g_seen;
}  // namespace

void warn(const std::string& message) {
    std::lock_guard<std::mutex> lock(g_mutex);
    if (g_handler) {
        g_handler(message);
        return;
    }
    // sweeps revalidate configs per grid point; say each thing once
    if (g_seen.insert(message).second) std::cerr << "warning: " << message << "\n";
}

void set_warn_handler(std::function<void(const std::string&)> handler) {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_handler = std::move(handler);
}

}  // namespace nhsense
