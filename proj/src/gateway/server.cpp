#include "socnav/gateway/server.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <sstream>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "socnav/errors.hpp"
#include "socnav/gateway/batch.hpp"
#include "socnav/gateway/trial_log.hpp"
#include "socnav/gateway/wire.hpp"

namespace socnav::gateway {
namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

class Session;

struct Shared {
  ServerOptions options;
  std::weak_ptr<Session> active;
};

std::string_view mime_type(const std::filesystem::path& p) {
  const auto ext = p.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "application/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".txt") return "text/plain";
  return "application/octet-stream";
}

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, std::shared_ptr<Shared> shared)
      : ws_(std::move(socket)), timer_(ws_.get_executor()), shared_(std::move(shared)) {}

  void accept(http::request<http::string_body> req, bool busy) {
    upgrade_ = std::move(req);
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(upgrade_, [self = shared_from_this(), busy](beast::error_code ec) {
      if (ec) return self->release();
      if (busy) {
        self->send(wire::Error{"busy", "another operator session is active"});
        return self->close_after_flush();
      }
      self->read();
    });
  }

  void stop() { close_after_flush(); }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->on_read(ec);
    });
  }

  void on_read(beast::error_code ec) {
    if (ec) return shutdown();
    std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    if (closing_) return;
    try {
      if (!ws_.got_text()) throw wire::ProtocolError("binary frames are not supported");
      handle(wire::decode(text));
    } catch (const wire::ProtocolError& e) {
      send(wire::Error{"protocol", e.what()});
      return close_after_flush();
    }
    read();
  }

  void handle(const wire::Message& message) {
    if (const auto* input = std::get_if<wire::Input>(&message)) {
      if (mailbox_) mailbox_->post({input->seq, StickInput(input->axis_x, input->axis_y)});
    } else if (const auto* start = std::get_if<wire::StartTrial>(&message)) {
      start_trial(*start);
    } else if (!std::holds_alternative<wire::ClientHello>(message)) {
      throw wire::ProtocolError(std::string(wire::tag(message)) + " is a server message");
    }
  }

  void start_trial(const wire::StartTrial& m) {
    if (runner_) {
      send(wire::Error{"state", "a trial is already running"});
      return;
    }
    ScenarioOverrides overrides;
    overrides.max_duration = m.max_duration;
    overrides.ped_count = m.ped_count;
    try {
      config_ = make_config(m.scenario, m.layout, m.seed, overrides);
      mailbox_ = std::make_shared<InputMailbox>();
      policy_ = std::make_unique<LivePolicy>(mailbox_);
      runner_ = std::make_unique<TrialRunner>(config_, m.condition, *policy_);
    } catch (const ConfigError& e) {
      runner_.reset();
      mailbox_.reset();
      send(wire::Error{"config", e.what()});
      return;
    }
    next_tick_ = std::chrono::steady_clock::now();
    schedule_tick();
  }

  void schedule_tick() {
    const double rate = shared_->options.tick_rate;
    if (rate <= 0.0) {
      asio::post(ws_.get_executor(), [self = shared_from_this()] { self->on_tick({}); });
      return;
    }
    next_tick_ += std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / rate));
    timer_.expires_at(next_tick_);
    timer_.async_wait([self = shared_from_this()](beast::error_code ec) { self->on_tick(ec); });
  }

  void on_tick(beast::error_code ec) {
    if (ec || !runner_ || closing_) return;
    const TickRecord& rec = runner_->tick();
    wire::StateUpdate update;
    update.tick = runner_->log().size() - 1;
    update.t = rec.t;
    update.condition = runner_->condition();
    update.robot = rec.robot;
    update.pedestrians = rec.peds;
    update.assistance = runner_->last_assistance();
    update.metrics = runner_->metrics();
    if (const auto applied = policy_->last_applied()) {
      update.applied_input =
          wire::AppliedInput{applied->seq, applied->stick.axis_x, applied->stick.axis_y};
    }
    update.walls = config_.walls;
    update.goal = config_.goal;
    send(update);

    if (runner_->finished()) return finish();
    schedule_tick();
  }

  void finish() {
    const Condition condition = runner_->condition();
    TrialResult result = std::move(*runner_).take_result();
    runner_.reset();
    const auto path =
        shared_->options.log_dir / log_file_name(config_, condition, policy_->name());
    wire::TrialEnd end{result.metrics, result.reason, path.string()};
    try {
      std::filesystem::create_directories(shared_->options.log_dir);
      save_trial_log(path, make_log_file(config_, condition, policy_->name(), std::move(result)));
    } catch (const std::exception& e) {
      send(wire::Error{"io", e.what()});
      end.log_file.clear();
    }
    send(end);
    mailbox_.reset();
  }

  void send(const wire::Message& message) {
    outbox_.push_back(wire::encode(message));
    if (!writing_) write();
  }

  void write() {
    writing_ = true;
    ws_.text(true);
    ws_.async_write(asio::buffer(outbox_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) return self->shutdown();
                      self->outbox_.pop_front();
                      if (!self->outbox_.empty()) return self->write();
                      self->writing_ = false;
                      if (self->closing_) self->close();
                    });
  }

  void close_after_flush() {
    closing_ = true;
    timer_.cancel();
    runner_.reset();
    release();
    if (!writing_) close();
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    ws_.async_close(websocket::close_code::normal,
                    [self = shared_from_this()](beast::error_code) { self->release(); });
  }

  void shutdown() {
    closing_ = true;
    timer_.cancel();
    runner_.reset();
    release();
  }

  void release() {
    if (shared_->active.lock().get() == this) shared_->active.reset();
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> upgrade_;
  std::deque<std::string> outbox_;
  bool writing_ = false;
  bool closing_ = false;
  bool closed_ = false;
  asio::steady_timer timer_;
  std::chrono::steady_clock::time_point next_tick_;
  std::shared_ptr<Shared> shared_;

  ScenarioConfig config_;
  std::shared_ptr<InputMailbox> mailbox_;
  std::unique_ptr<LivePolicy> policy_;
  std::unique_ptr<TrialRunner> runner_;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket socket, std::shared_ptr<Shared> shared)
      : stream_(std::move(socket)), shared_(std::move(shared)) {}

  void start() {
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) {
                       if (!ec) self->on_request();
                     });
  }

 private:
  void on_request() {
    if (websocket::is_upgrade(req_)) {
      stream_.expires_never();
      const bool busy = !shared_->active.expired();
      auto session = std::make_shared<Session>(stream_.release_socket(), shared_);
      if (!busy) shared_->active = session;
      session->accept(std::move(req_), busy);
      return;
    }
    respond();
  }

  void respond() {
    auto res = std::make_shared<http::response<http::string_body>>();
    res->version(req_.version());
    res->keep_alive(false);
    res->set(http::field::server, "socnav");
    if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
      res->result(http::status::method_not_allowed);
    } else if (auto file = resolve(req_.target()); file && std::filesystem::is_regular_file(*file)) {
      std::ifstream in(*file, std::ios::binary);
      std::ostringstream body;
      body << in.rdbuf();
      res->result(http::status::ok);
      res->set(http::field::content_type, std::string(mime_type(*file)));
      if (req_.method() == http::verb::get) res->body() = body.str();
    } else {
      res->result(http::status::not_found);
      res->set(http::field::content_type, "text/plain");
      res->body() = "not found\n";
    }
    res->prepare_payload();
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code, std::size_t) {
                        beast::error_code ignored;
                        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                      });
  }

  std::optional<std::filesystem::path> resolve(beast::string_view target) const {
    const auto& root = shared_->options.static_dir;
    if (root.empty()) return std::nullopt;
    std::string path(target.substr(0, target.find('?')));
    if (path.empty() || path.front() != '/' || path.find("..") != std::string::npos) {
      return std::nullopt;
    }
    if (path.back() == '/') path += "index.html";
    return root / path.substr(1);
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  std::shared_ptr<Shared> shared_;
};

}  // namespace

struct Server::Impl : std::enable_shared_from_this<Server::Impl> {
  Impl(asio::io_context& ioc, ServerOptions options)
      : acceptor(ioc), shared(std::make_shared<Shared>(Shared{std::move(options), {}})) {
    const tcp::endpoint endpoint(asio::ip::make_address(shared->options.address),
                                 shared->options.port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen();
  }

  void accept() {
    acceptor.async_accept([self = shared_from_this()](beast::error_code ec, tcp::socket socket) {
      if (!self->acceptor.is_open()) return;
      if (!ec) std::make_shared<HttpConnection>(std::move(socket), self->shared)->start();
      self->accept();
    });
  }

  tcp::acceptor acceptor;
  std::shared_ptr<Shared> shared;
};

Server::Server(asio::io_context& ioc, ServerOptions options)
    : impl_(std::make_shared<Impl>(ioc, std::move(options))) {}

Server::~Server() = default;

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start() { impl_->accept(); }

void Server::stop() {
  asio::post(impl_->acceptor.get_executor(), [impl = impl_] {
    beast::error_code ignored;
    impl->acceptor.close(ignored);
    if (auto session = impl->shared->active.lock()) session->stop();
  });
}

std::uint16_t port_from_env(std::uint16_t fallback) {
  const char* raw = std::getenv("SOCNAV_PORT");
  if (raw == nullptr) return fallback;
  const std::string_view s(raw);
  unsigned value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || value == 0 || value > 65535) {
    return fallback;
  }
  return static_cast<std::uint16_t>(value);
}

}  // namespace socnav::gateway
