#pragma once

#include <string>
#include <variant>

namespace swarm {

// Street-building traffic.  `n` is the hop counter carried by the flood
// ("receive N, send N+1"); `origin` identifies which street the frame
// belongs to so two independent streets do not merge.
struct StreetMsg {
    enum class Kind { BuildStreet, Ok, NavPing, Data };
    Kind kind = Kind::BuildStreet;
    int n = 0;
    int origin = 0;
    int payload = 0;  // Data only
};

// Scout/responder traffic.  Requests flood outward with a growing hop
// count; feedback frames travel back along recorded reverse paths; engage
// frames flood again and responders recognize themselves.
struct FeedbackMsg {
    enum class Kind { Request, Feedback, Engage };
    Kind kind = Kind::Request;
    std::string capability;
    int scout = 0;
    int hop = 0;
    int responder = -1;  // Feedback only
};

using MsgBody = std::variant<StreetMsg, FeedbackMsg>;

// One frame in flight.  `to < 0` means broadcast: every robot inside the
// sender's communication radius receives a copy at the end of the tick.
struct Message {
    int from = -1;
    int to = -1;
    MsgBody body;
};

}  // namespace swarm
