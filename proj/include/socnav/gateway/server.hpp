#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include <boost/asio/io_context.hpp>

namespace socnav::gateway {

struct ServerOptions {
  std::string address = "127.0.0.1";
  std::uint16_t port = 8080;  // 0 picks a free port
  std::filesystem::path log_dir = ".";
  std::filesystem::path static_dir;  // empty: no file endpoint
  double tick_rate = 20.0;           // Hz; wall-clock pacing only, dt is fixed by the config
};

// One operator session at a time over WebSocket; plain HTTP GETs are served
// from static_dir. Everything runs on the io_context's thread.
class Server {
 public:
  Server(boost::asio::io_context& ioc, ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const;
  void start();
  void stop();

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// SOCNAV_PORT when set and valid, otherwise fallback.
std::uint16_t port_from_env(std::uint16_t fallback);

}  // namespace socnav::gateway
