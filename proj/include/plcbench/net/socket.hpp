#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plcbench {
namespace net {

using Millis = std::chrono::milliseconds;

// Thin RAII wrappers over the BSD socket API. Every failure surfaces as
// ConnectionError; expired waits as TimeoutError.

class Socket {
public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    Socket(Socket&& other) noexcept;
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    ~Socket();

    int fd() const { return fd_; }
    bool valid() const { return fd_ >= 0; }
    void close();

    // Asks the kernel to stamp incoming data at delivery, which keeps
    // receiver scheduling noise out of arrival times. Returns false when the
    // platform refuses; reads then keep working without stamps.
    bool enable_rx_timestamps();
    bool rx_timestamps_enabled() const { return rx_stamps_; }
    // Stamp of the newest data any recv call returned, microseconds on the
    // realtime clock; empty before the first stamped read.
    std::optional<std::int64_t> last_rx_us() const { return last_rx_us_; }

protected:
    // recv(2) with timestamp capture when enabled.
    ssize_t recv_stamped(void* buf, size_t len);

    int fd_ = -1;
    bool rx_stamps_ = false;
    std::optional<std::int64_t> last_rx_us_;
};

class TcpStream : public Socket {
public:
    TcpStream() = default;
    explicit TcpStream(int fd);

    // Retries until the deadline; the peer may not be listening yet.
    static TcpStream connect(const std::string& host, std::uint16_t port,
                             Millis timeout = Millis(5000));

    void send_all(std::span<const std::uint8_t> data);
    // Exactly `count` bytes or TimeoutError/ConnectionError.
    std::vector<std::uint8_t> recv_exact(size_t count, Millis timeout);
    // Whatever arrived within the timeout, empty on timeout. Throws
    // ConnectionError when the peer closed or the socket failed.
    std::vector<std::uint8_t> recv_some(size_t max_len, Millis timeout);
    void set_recv_timeout(Millis timeout);
};

class TcpListener : public Socket {
public:
    static TcpListener bind(const std::string& host, std::uint16_t port);

    std::uint16_t local_port() const;
    TcpStream accept(Millis timeout);
};

class UdpSocket : public Socket {
public:
    static UdpSocket bind(const std::string& host, std::uint16_t port);
    // Unbound sender.
    static UdpSocket open();

    std::uint16_t local_port() const;
    void send_to(std::span<const std::uint8_t> data, const std::string& host,
                 std::uint16_t port);
    std::vector<std::uint8_t> recv(size_t max_len, Millis timeout);

    // Subscribes to a multicast group on the loopback-safe interface.
    void join_multicast(const std::string& group, const std::string& interface_addr);
    // Routes outgoing multicast through the given interface, loop enabled.
    void set_multicast_interface(const std::string& interface_addr);
};

bool is_multicast_address(const std::string& host);

} // namespace net
} // namespace plcbench
