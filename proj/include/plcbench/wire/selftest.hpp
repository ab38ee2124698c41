#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "plcbench/wire/codecs.hpp"

namespace plcbench {
namespace wire {

// Random well-formed messages, one generator per codec. Field values cover
// the full carried ranges; fields the wire does not carry stay at their
// defaults so decode(encode(m)) == m is the exact contract.
OucPayload random_ouc(std::mt19937_64& rng);
S7Message random_s7(std::mt19937_64& rng);
OpcUaServiceMessage random_opcua(std::mt19937_64& rng);
UadpNetworkMessage random_uadp(std::mt19937_64& rng);

struct SelftestResult {
    std::string check;
    std::int64_t cases = 0;
    bool ok = true;
    std::string detail; // first failure, empty when ok
};

// Round-trips `trials` random messages through every codec and checks the
// encoded sizes against the frame model for every value count the interface
// carries (1..100, 1..10 for the publisher datagram).
std::vector<SelftestResult> roundtrip_selftest(int trials, std::uint64_t seed);

// True when every result is ok.
bool all_ok(const std::vector<SelftestResult>& results);

} // namespace wire
} // namespace plcbench
