#include "rt/frame_server.hpp"

#include <algorithm>
#include <deque>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <json.hpp>

namespace rt
{

const char *buildVersion() { return RT_VERSION; }

namespace
{

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

class ViewerSession;

// Registry of live viewers; the frame loop thread broadcasts through it.
class Hub
{
  public:
    void add(const std::shared_ptr<ViewerSession> &s)
    {
        std::lock_guard lock(m_mutex);
        m_sessions.push_back(s);
    }

    void remove(const ViewerSession *s)
    {
        std::lock_guard lock(m_mutex);
        std::erase_if(m_sessions, [s](const std::weak_ptr<ViewerSession> &w) {
            auto p = w.lock();
            return !p || p.get() == s;
        });
    }

    std::size_t count() const
    {
        std::lock_guard lock(m_mutex);
        return static_cast<std::size_t>(
            std::count_if(m_sessions.begin(), m_sessions.end(), [](const auto &w) { return !w.expired(); }));
    }

    void broadcast(const EncodedFrame &frame);

  private:
    mutable std::mutex m_mutex;
    std::vector<std::weak_ptr<ViewerSession>> m_sessions;
};

class ViewerSession : public std::enable_shared_from_this<ViewerSession>
{
  public:
    ViewerSession(tcp::socket &&socket, FrameLoop &loop, Hub &hub, std::size_t maxQueuedFrames)
        : m_ws(std::move(socket)), m_loop(loop), m_hub(hub), m_maxQueuedFrames(std::max<std::size_t>(maxQueuedFrames, 1))
    {
    }

    void run(http::request<http::string_body> req)
    {
        beast::get_lowest_layer(m_ws).expires_never();
        m_ws.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        m_ws.set_option(websocket::stream_base::decorator([](websocket::response_type &res) {
            res.set(http::field::server, std::string("rt-frame-server/") + RT_VERSION);
        }));
        m_ws.async_accept(req, beast::bind_front_handler(&ViewerSession::onAccept, shared_from_this()));
    }

    // Called from the frame loop thread.
    void sendFrame(const EncodedFrame &frame)
    {
        net::post(m_ws.get_executor(), [self = shared_from_this(), frame] { self->enqueue(Outgoing{frame, nullptr}); });
    }

  private:
    struct Outgoing
    {
        EncodedFrame frame;
        std::shared_ptr<const std::string> text;
    };

    void onAccept(beast::error_code ec)
    {
        if (ec) return;
        m_hub.add(shared_from_this());
        doRead();
    }

    void doRead()
    {
        m_ws.async_read(m_buffer, beast::bind_front_handler(&ViewerSession::onRead, shared_from_this()));
    }

    void onRead(beast::error_code ec, std::size_t)
    {
        if (ec)
        {
            m_closed = true;
            m_hub.remove(this);
            return;
        }
        if (m_ws.got_text())
        {
            const std::string text = beast::buffers_to_string(m_buffer.data());
            try
            {
                m_loop.post(handleControl(text));
            }
            catch (const ControlError &e)
            {
                sendText(errorReply(e.what()));
            }
        }
        else
        {
            sendText(errorReply("control messages must be JSON text frames"));
        }
        m_buffer.consume(m_buffer.size());
        doRead();
    }

    void sendText(std::string text) { enqueue(Outgoing{nullptr, std::make_shared<const std::string>(std::move(text))}); }

    void enqueue(Outgoing out)
    {
        if (m_closed) return;
        if (out.frame)
        {
            // The front entry may be mid-write; only later frames are droppable.
            const auto first = m_queue.begin() + (m_writing ? 1 : 0);
            const auto frames =
                static_cast<std::size_t>(std::count_if(first, m_queue.end(), [](const Outgoing &o) { return o.frame != nullptr; }));
            if (frames >= m_maxQueuedFrames)
            {
                const auto oldest = std::find_if(first, m_queue.end(), [](const Outgoing &o) { return o.frame != nullptr; });
                if (oldest != m_queue.end()) m_queue.erase(oldest);
            }
        }
        m_queue.push_back(std::move(out));
        if (!m_writing) doWrite();
    }

    void doWrite()
    {
        m_writing = true;
        const Outgoing &front = m_queue.front();
        if (front.frame)
        {
            m_ws.binary(true);
            m_ws.async_write(net::buffer(*front.frame),
                             beast::bind_front_handler(&ViewerSession::onWrite, shared_from_this()));
        }
        else
        {
            m_ws.text(true);
            m_ws.async_write(net::buffer(*front.text),
                             beast::bind_front_handler(&ViewerSession::onWrite, shared_from_this()));
        }
    }

    void onWrite(beast::error_code ec, std::size_t)
    {
        m_queue.pop_front();
        if (ec)
        {
            m_closed = true;
            m_writing = false;
            m_queue.clear();
            m_hub.remove(this);
            return;
        }
        if (m_queue.empty())
            m_writing = false;
        else
            doWrite();
    }

    websocket::stream<beast::tcp_stream> m_ws;
    beast::flat_buffer m_buffer;
    FrameLoop &m_loop;
    Hub &m_hub;
    std::size_t m_maxQueuedFrames;
    std::deque<Outgoing> m_queue;
    bool m_writing = false;
    bool m_closed = false;
};

void Hub::broadcast(const EncodedFrame &frame)
{
    std::vector<std::shared_ptr<ViewerSession>> live;
    {
        std::lock_guard lock(m_mutex);
        for (const auto &w : m_sessions)
            if (auto p = w.lock()) live.push_back(std::move(p));
    }
    for (const auto &s : live) s->sendFrame(frame);
}

class HttpSession : public std::enable_shared_from_this<HttpSession>
{
  public:
    HttpSession(tcp::socket &&socket, FrameLoop &loop, Hub &hub, std::size_t queueFrames)
        : m_stream(std::move(socket)), m_loop(loop), m_hub(hub), m_queueFrames(queueFrames)
    {
    }

    void run()
    {
        net::dispatch(m_stream.get_executor(), beast::bind_front_handler(&HttpSession::doRead, shared_from_this()));
    }

  private:
    void doRead()
    {
        m_req = {};
        m_stream.expires_after(std::chrono::seconds(30));
        http::async_read(m_stream, m_buffer, m_req, beast::bind_front_handler(&HttpSession::onRead, shared_from_this()));
    }

    void onRead(beast::error_code ec, std::size_t)
    {
        if (ec == http::error::end_of_stream)
        {
            beast::error_code ignored;
            m_stream.socket().shutdown(tcp::socket::shutdown_send, ignored);
            return;
        }
        if (ec) return;

        if (websocket::is_upgrade(m_req))
        {
            if (m_req.target() == "/stream")
            {
                std::make_shared<ViewerSession>(m_stream.release_socket(), m_loop, m_hub, m_queueFrames)
                    ->run(std::move(m_req));
                return;
            }
        }

        auto res = std::make_shared<http::response<http::string_body>>();
        res->version(m_req.version());
        res->keep_alive(m_req.keep_alive());
        res->set(http::field::server, std::string("rt-frame-server/") + RT_VERSION);
        if (m_req.target() == "/healthz" && (m_req.method() == http::verb::get || m_req.method() == http::verb::head))
        {
            res->result(http::status::ok);
            res->set(http::field::content_type, "application/json");
            res->body() = nlohmann::json{{"status", "ok"}, {"version", RT_VERSION}}.dump();
        }
        else
        {
            res->result(http::status::not_found);
            res->set(http::field::content_type, "text/plain");
            res->body() = "not found\n";
        }
        res->prepare_payload();
        m_res = res;
        http::async_write(m_stream, *res, beast::bind_front_handler(&HttpSession::onWrite, shared_from_this()));
    }

    void onWrite(beast::error_code ec, std::size_t)
    {
        const bool keepAlive = m_res && m_res->keep_alive();
        m_res.reset();
        if (ec) return;
        if (!keepAlive)
        {
            beast::error_code ignored;
            m_stream.socket().shutdown(tcp::socket::shutdown_send, ignored);
            return;
        }
        doRead();
    }

    beast::tcp_stream m_stream;
    beast::flat_buffer m_buffer;
    http::request<http::string_body> m_req;
    std::shared_ptr<http::response<http::string_body>> m_res;
    FrameLoop &m_loop;
    Hub &m_hub;
    std::size_t m_queueFrames;
};

} // namespace

class FrameServer::Impl
{
  public:
    Impl(FrameLoop &loop, ServerOptions options) : m_loop(loop), m_options(std::move(options)), m_acceptor(m_ioc) {}

    void start()
    {
        const tcp::endpoint endpoint(net::ip::make_address(m_options.address), m_options.port);
        m_acceptor.open(endpoint.protocol());
        m_acceptor.set_option(net::socket_base::reuse_address(true));
        m_acceptor.bind(endpoint);
        m_acceptor.listen(net::socket_base::max_listen_connections);
        m_port = m_acceptor.local_endpoint().port();
        doAccept();

        m_ioThread = std::jthread([this] { m_ioc.run(); });
        m_loopThread = std::jthread([this](std::stop_token st) {
            try
            {
                m_loop.run(st, [this](std::uint32_t, const EncodedFrame &frame) { m_hub.broadcast(frame); });
            }
            catch (const std::exception &e)
            {
                std::cerr << "frame loop stopped: " << e.what() << '\n';
            }
        });
    }

    void stop()
    {
        if (m_loopThread.joinable())
        {
            m_loopThread.request_stop();
            m_loopThread.join();
        }
        m_ioc.stop();
        if (m_ioThread.joinable()) m_ioThread.join();
    }

    std::uint16_t port() const { return m_port; }
    std::size_t viewers() const { return m_hub.count(); }

  private:
    void doAccept()
    {
        m_acceptor.async_accept(net::make_strand(m_ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec) return;
            std::make_shared<HttpSession>(std::move(socket), m_loop, m_hub, m_options.sendQueueFrames)->run();
            doAccept();
        });
    }

    FrameLoop &m_loop;
    ServerOptions m_options;
    net::io_context m_ioc;
    tcp::acceptor m_acceptor;
    Hub m_hub;
    std::uint16_t m_port = 0;
    std::jthread m_ioThread;
    std::jthread m_loopThread;
};

FrameServer::FrameServer(FrameLoop &loop, ServerOptions options)
    : m_impl(std::make_unique<Impl>(loop, std::move(options)))
{
}

FrameServer::~FrameServer() { m_impl->stop(); }

void FrameServer::start() { m_impl->start(); }
void FrameServer::stop() { m_impl->stop(); }
std::uint16_t FrameServer::port() const { return m_impl->port(); }
std::size_t FrameServer::viewerCount() const { return m_impl->viewers(); }

} // namespace rt
