#include "plcbench/net/socket.hpp"

#include <arpa/inet.h>
#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <thread>
#include <unistd.h>

#include "plcbench/errors.hpp"

namespace plcbench {
namespace net {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw ConnectionError(what + ": " + std::strerror(errno));
}

sockaddr_in make_addr(const std::string& host, std::uint16_t port) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (host.empty() || host == "*") {
        addr.sin_addr.s_addr = htonl(INADDR_ANY);
    } else if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        throw InvalidConfigError("not an IPv4 address: " + host);
    }
    return addr;
}

void wait_readable(int fd, Millis timeout, const char* what) {
    pollfd p{fd, POLLIN, 0};
    const int rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
    if (rc < 0) {
        fail(what);
    }
    if (rc == 0) {
        throw TimeoutError(std::string(what) + ": timed out after " +
                           std::to_string(timeout.count()) + " ms");
    }
}

std::uint16_t bound_port(int fd) {
    sockaddr_in addr{};
    socklen_t len = sizeof addr;
    if (::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
        fail("getsockname");
    }
    return ntohs(addr.sin_port);
}

} // namespace

Socket::Socket(Socket&& other) noexcept
    : fd_(other.fd_), rx_stamps_(other.rx_stamps_), last_rx_us_(other.last_rx_us_) {
    other.fd_ = -1;
    other.rx_stamps_ = false;
    other.last_rx_us_.reset();
}

Socket& Socket::operator=(Socket&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        rx_stamps_ = other.rx_stamps_;
        last_rx_us_ = other.last_rx_us_;
        other.fd_ = -1;
        other.rx_stamps_ = false;
        other.last_rx_us_.reset();
    }
    return *this;
}

bool Socket::enable_rx_timestamps() {
    int one = 1;
    if (::setsockopt(fd_, SOL_SOCKET, SO_TIMESTAMPNS, &one, sizeof one) == 0) {
        rx_stamps_ = true;
    }
    return rx_stamps_;
}

ssize_t Socket::recv_stamped(void* buf, size_t len) {
    if (!rx_stamps_) {
        return ::recv(fd_, buf, len, 0);
    }
    iovec iov{buf, len};
    alignas(cmsghdr) char ctrl[CMSG_SPACE(sizeof(timespec))];
    msghdr msg{};
    msg.msg_iov = &iov;
    msg.msg_iovlen = 1;
    msg.msg_control = ctrl;
    msg.msg_controllen = sizeof ctrl;
    const ssize_t rc = ::recvmsg(fd_, &msg, 0);
    if (rc > 0) {
        for (cmsghdr* c = CMSG_FIRSTHDR(&msg); c != nullptr; c = CMSG_NXTHDR(&msg, c)) {
            if (c->cmsg_level == SOL_SOCKET && c->cmsg_type == SCM_TIMESTAMPNS) {
                timespec ts{};
                std::memcpy(&ts, CMSG_DATA(c), sizeof ts);
                last_rx_us_ = static_cast<std::int64_t>(ts.tv_sec) * 1000000 +
                              ts.tv_nsec / 1000;
            }
        }
    }
    return rc;
}

Socket::~Socket() { close(); }

void Socket::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

TcpStream::TcpStream(int fd) : Socket(fd) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

TcpStream TcpStream::connect(const std::string& host, std::uint16_t port, Millis timeout) {
    const sockaddr_in addr = make_addr(host.empty() ? "127.0.0.1" : host, port);
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
        int fd = ::socket(AF_INET, SOCK_STREAM, 0);
        if (fd < 0) {
            fail("socket");
        }
        if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) == 0) {
            return TcpStream(fd);
        }
        ::close(fd);
        if (std::chrono::steady_clock::now() >= deadline) {
            throw ConnectionError("connect to " + host + ":" + std::to_string(port) +
                                  " failed: " + std::strerror(errno));
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
}

void TcpStream::send_all(std::span<const std::uint8_t> data) {
    size_t sent = 0;
    while (sent < data.size()) {
        const ssize_t rc = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (rc <= 0) {
            fail("send");
        }
        sent += static_cast<size_t>(rc);
    }
}

std::vector<std::uint8_t> TcpStream::recv_exact(size_t count, Millis timeout) {
    std::vector<std::uint8_t> out(count);
    size_t got = 0;
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (got < count) {
        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            throw TimeoutError("recv: timed out with " + std::to_string(got) + " of " +
                               std::to_string(count) + " bytes");
        }
        wait_readable(fd_, std::chrono::duration_cast<Millis>(deadline - now), "recv");
        const ssize_t rc = recv_stamped(out.data() + got, count - got);
        if (rc == 0) {
            throw ConnectionError("peer closed the connection mid-message");
        }
        if (rc < 0) {
            fail("recv");
        }
        got += static_cast<size_t>(rc);
    }
    return out;
}

std::vector<std::uint8_t> TcpStream::recv_some(size_t max_len, Millis timeout) {
    pollfd p{fd_, POLLIN, 0};
    const int rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
    if (rc < 0) {
        fail("recv");
    }
    if (rc == 0) {
        return {};
    }
    std::vector<std::uint8_t> buf(max_len);
    const ssize_t got = recv_stamped(buf.data(), buf.size());
    if (got == 0) {
        throw ConnectionError("peer closed the connection");
    }
    if (got < 0) {
        fail("recv");
    }
    buf.resize(static_cast<size_t>(got));
    return buf;
}

void TcpStream::set_recv_timeout(Millis timeout) {
    timeval tv{};
    tv.tv_sec = timeout.count() / 1000;
    tv.tv_usec = static_cast<suseconds_t>(timeout.count() % 1000) * 1000;
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
}

TcpListener TcpListener::bind(const std::string& host, std::uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) {
        fail("socket");
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    const sockaddr_in addr = make_addr(host, port);
    if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
        ::close(fd);
        throw ConnectionError("bind to " + host + ":" + std::to_string(port) +
                              " failed: " + std::strerror(errno));
    }
    if (::listen(fd, 8) != 0) {
        ::close(fd);
        fail("listen");
    }
    TcpListener l;
    l.fd_ = fd;
    return l;
}

std::uint16_t TcpListener::local_port() const { return bound_port(fd_); }

TcpStream TcpListener::accept(Millis timeout) {
    wait_readable(fd_, timeout, "accept");
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd < 0) {
        fail("accept");
    }
    return TcpStream(fd);
}

UdpSocket UdpSocket::bind(const std::string& host, std::uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd < 0) {
        fail("socket");
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    // Multicast groups must be bound as ANY to receive on loopback setups.
    const std::string bind_host = is_multicast_address(host) ? "*" : host;
    const sockaddr_in addr = make_addr(bind_host, port);
    if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
        ::close(fd);
        throw ConnectionError("bind to " + host + ":" + std::to_string(port) +
                              " failed: " + std::strerror(errno));
    }
    UdpSocket s;
    s.fd_ = fd;
    return s;
}

UdpSocket UdpSocket::open() {
    int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd < 0) {
        fail("socket");
    }
    UdpSocket s;
    s.fd_ = fd;
    return s;
}

std::uint16_t UdpSocket::local_port() const { return bound_port(fd_); }

void UdpSocket::send_to(std::span<const std::uint8_t> data, const std::string& host,
                        std::uint16_t port) {
    const sockaddr_in addr = make_addr(host, port);
    const ssize_t rc = ::sendto(fd_, data.data(), data.size(), 0,
                                reinterpret_cast<const sockaddr*>(&addr), sizeof addr);
    if (rc < 0 || static_cast<size_t>(rc) != data.size()) {
        fail("sendto");
    }
}

std::vector<std::uint8_t> UdpSocket::recv(size_t max_len, Millis timeout) {
    wait_readable(fd_, timeout, "recv");
    std::vector<std::uint8_t> buf(max_len);
    const ssize_t rc = recv_stamped(buf.data(), buf.size());
    if (rc < 0) {
        fail("recv");
    }
    buf.resize(static_cast<size_t>(rc));
    return buf;
}

void UdpSocket::join_multicast(const std::string& group, const std::string& interface_addr) {
    ip_mreq req{};
    if (inet_pton(AF_INET, group.c_str(), &req.imr_multiaddr) != 1) {
        throw InvalidConfigError("not an IPv4 group address: " + group);
    }
    if (inet_pton(AF_INET, interface_addr.c_str(), &req.imr_interface) != 1) {
        throw InvalidConfigError("not an IPv4 interface address: " + interface_addr);
    }
    if (::setsockopt(fd_, IPPROTO_IP, IP_ADD_MEMBERSHIP, &req, sizeof req) != 0) {
        fail("join multicast group " + group);
    }
}

void UdpSocket::set_multicast_interface(const std::string& interface_addr) {
    in_addr addr{};
    if (inet_pton(AF_INET, interface_addr.c_str(), &addr) != 1) {
        throw InvalidConfigError("not an IPv4 interface address: " + interface_addr);
    }
    if (::setsockopt(fd_, IPPROTO_IP, IP_MULTICAST_IF, &addr, sizeof addr) != 0) {
        fail("set multicast interface");
    }
    const std::uint8_t loop = 1;
    ::setsockopt(fd_, IPPROTO_IP, IP_MULTICAST_LOOP, &loop, sizeof loop);
    const std::uint8_t ttl = 1;
    ::setsockopt(fd_, IPPROTO_IP, IP_MULTICAST_TTL, &ttl, sizeof ttl);
}

bool is_multicast_address(const std::string& host) {
    in_addr addr{};
    if (inet_pton(AF_INET, host.c_str(), &addr) != 1) {
        return false;
    }
    const std::uint32_t ip = ntohl(addr.s_addr);
    return (ip >> 28) == 0xE;
}

} // namespace net
} // namespace plcbench
