#include "ssle/bootstrap.hpp"

namespace ssle {

BootState bootInit(std::int64_t identifierDraw, const Params& params) {
    BootState s;
    s.initialized = true;
    s.identifier = identifierDraw;
    s.minIdentifier = identifierDraw;
    s.leCount = params.leCountCap();
    s.leaderDone = false;
    s.leaderBit = false;
    return s;
}

void bootStep(BootState& u, BootState& v) {
    const std::int64_t minId = u.minIdentifier < v.minIdentifier ? u.minIdentifier
                                                                 : v.minIdentifier;
    u.minIdentifier = minId;
    v.minIdentifier = minId;

    for (BootState* s : {&u, &v}) {
        if (s->leCount > 0) {
            s->leCount -= 1;
            if (s->leCount == 0) {
                s->leaderDone = true;
                s->leaderBit = (s->identifier == s->minIdentifier);
            }
        }
    }
}

}  // namespace ssle
