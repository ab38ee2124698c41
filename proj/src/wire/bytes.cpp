#include "plcbench/wire/bytes.hpp"

#include "plcbench/errors.hpp"

namespace plcbench {
namespace wire {

std::string to_string(ByteOrder o) {
    return o == ByteOrder::big_endian ? "big" : "little";
}

ByteOrder byte_order_from_string(std::string_view name) {
    if (name == "big" || name == "be") {
        return ByteOrder::big_endian;
    }
    if (name == "little" || name == "le") {
        return ByteOrder::little_endian;
    }
    throw UnknownNameError("unknown byte order: " + std::string(name));
}

void ByteWriter::u8(std::uint8_t v) { buf_.push_back(v); }

void ByteWriter::u16be(std::uint16_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    buf_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::u16le(std::uint16_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v));
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
}

void ByteWriter::u24be(std::uint32_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v >> 16));
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    buf_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32be(std::uint32_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v >> 24));
    buf_.push_back(static_cast<std::uint8_t>(v >> 16));
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    buf_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32le(std::uint32_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v));
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    buf_.push_back(static_cast<std::uint8_t>(v >> 16));
    buf_.push_back(static_cast<std::uint8_t>(v >> 24));
}

void ByteWriter::i32le(std::int32_t v) { u32le(static_cast<std::uint32_t>(v)); }

void ByteWriter::u64le(std::uint64_t v) {
    u32le(static_cast<std::uint32_t>(v));
    u32le(static_cast<std::uint32_t>(v >> 32));
}

void ByteWriter::i64le(std::int64_t v) { u64le(static_cast<std::uint64_t>(v)); }

void ByteWriter::u32(std::uint32_t v, ByteOrder o) {
    o == ByteOrder::big_endian ? u32be(v) : u32le(v);
}

void ByteWriter::raw(std::span<const std::uint8_t> data) {
    buf_.insert(buf_.end(), data.begin(), data.end());
}

void ByteWriter::zeros(size_t count) { buf_.insert(buf_.end(), count, 0); }

void ByteWriter::patch_u16be(size_t offset, std::uint16_t v) {
    buf_.at(offset) = static_cast<std::uint8_t>(v >> 8);
    buf_.at(offset + 1) = static_cast<std::uint8_t>(v);
}

void ByteWriter::patch_u32le(size_t offset, std::uint32_t v) {
    buf_.at(offset) = static_cast<std::uint8_t>(v);
    buf_.at(offset + 1) = static_cast<std::uint8_t>(v >> 8);
    buf_.at(offset + 2) = static_cast<std::uint8_t>(v >> 16);
    buf_.at(offset + 3) = static_cast<std::uint8_t>(v >> 24);
}

ByteReader::ByteReader(std::span<const std::uint8_t> data, std::string context)
    : data_(data), context_(std::move(context)) {}

void ByteReader::fail(const std::string& detail) const {
    throw MalformedMessageError(context_ + ": " + detail + " at offset " +
                                std::to_string(pos_));
}

void ByteReader::need(size_t count) const {
    if (remaining() < count) {
        throw MalformedMessageError(context_ + ": truncated, needed " +
                                    std::to_string(count) + " bytes at offset " +
                                    std::to_string(pos_) + " of " +
                                    std::to_string(data_.size()));
    }
}

std::uint8_t ByteReader::u8() {
    need(1);
    return data_[pos_++];
}

std::uint16_t ByteReader::u16be() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
    pos_ += 2;
    return v;
}

std::uint16_t ByteReader::u16le() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_ + 1] << 8 | data_[pos_]);
    pos_ += 2;
    return v;
}

std::uint32_t ByteReader::u24be() {
    need(3);
    std::uint32_t v = static_cast<std::uint32_t>(data_[pos_]) << 16 |
                      static_cast<std::uint32_t>(data_[pos_ + 1]) << 8 |
                      static_cast<std::uint32_t>(data_[pos_ + 2]);
    pos_ += 3;
    return v;
}

std::uint32_t ByteReader::u32be() {
    need(4);
    std::uint32_t v = static_cast<std::uint32_t>(data_[pos_]) << 24 |
                      static_cast<std::uint32_t>(data_[pos_ + 1]) << 16 |
                      static_cast<std::uint32_t>(data_[pos_ + 2]) << 8 |
                      static_cast<std::uint32_t>(data_[pos_ + 3]);
    pos_ += 4;
    return v;
}

std::uint32_t ByteReader::u32le() {
    need(4);
    std::uint32_t v = static_cast<std::uint32_t>(data_[pos_ + 3]) << 24 |
                      static_cast<std::uint32_t>(data_[pos_ + 2]) << 16 |
                      static_cast<std::uint32_t>(data_[pos_ + 1]) << 8 |
                      static_cast<std::uint32_t>(data_[pos_]);
    pos_ += 4;
    return v;
}

std::int32_t ByteReader::i32le() { return static_cast<std::int32_t>(u32le()); }

std::uint64_t ByteReader::u64le() {
    std::uint64_t lo = u32le();
    std::uint64_t hi = u32le();
    return hi << 32 | lo;
}

std::int64_t ByteReader::i64le() { return static_cast<std::int64_t>(u64le()); }

std::uint32_t ByteReader::u32(ByteOrder o) {
    return o == ByteOrder::big_endian ? u32be() : u32le();
}

std::vector<std::uint8_t> ByteReader::raw(size_t count) {
    need(count);
    std::vector<std::uint8_t> out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                  data_.begin() + static_cast<std::ptrdiff_t>(pos_ + count));
    pos_ += count;
    return out;
}

void ByteReader::skip_zeros(size_t count) {
    need(count);
    for (size_t i = 0; i < count; ++i) {
        if (data_[pos_ + i] != 0) {
            fail("padding byte " + std::to_string(i) + " is nonzero");
        }
    }
    pos_ += count;
}

void ByteReader::expect_u8(std::uint8_t v, const char* what) {
    std::uint8_t got = u8();
    if (got != v) {
        --pos_;
        fail(std::string(what) + " mismatch: expected " + std::to_string(v) +
             ", got " + std::to_string(got));
    }
}

void ByteReader::expect_end() {
    if (remaining() != 0) {
        fail(std::to_string(remaining()) + " trailing bytes");
    }
}

} // namespace wire
} // namespace plcbench
