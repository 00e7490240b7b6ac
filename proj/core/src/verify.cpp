#include "ssle/verify.hpp"

#include "ssle/reset.hpp"

namespace ssle {

VerifyState initialVerifyState(int rank, const GroupPartition& partition, const Params& params) {
    VerifyState s;
    s.generation = 0;
    s.probationTimer = params.pMax();
    s.dc = initDC(rank, partition, params);
    return s;
}

VerifyEvents stableVerifyStep(AgentState& u, AgentState& v, const GroupPartition& partition,
                              const Params& params, const DrawFn& draw) {
    VerifyEvents events;

    for (AgentState* a : {&u, &v}) {
        int& timer = a->verifier().sub.probationTimer;
        if (timer > 0) timer -= 1;
    }

    VerifierState& uv = u.verifier();
    VerifierState& vv = v.verifier();

    if (uv.sub.generation == vv.sub.generation) {
        const DcStepResult dc = detectCollisionStep(uv.rank, uv.sub.dc, vv.rank, vv.sub.dc,
                                                    partition, params, draw);
        if (dc.raisedTop) events.topsRaised += 1;

        // Resolve error states, standing ones included: soft reset off
        // probation, full reset on probation.
        for (AgentState* a : {&u, &v}) {
            VerifierState& av = a->verifier();
            if (!av.sub.dc.top) continue;
            if (av.sub.probationTimer == 0) {
                av.sub.generation = (av.sub.generation + 1) % 6;
                av.sub.dc = initDC(av.rank, partition, params);
                av.sub.probationTimer = params.pMax();
                events.softResets += 1;
            } else {
                triggerReset(*a, params);
                events.fullResets += 1;
            }
        }
        return events;
    }

    struct Side {
        AgentState* self;
        AgentState* other;
    };
    for (const Side& side : {Side{&u, &v}, Side{&v, &u}}) {
        VerifierState& iv = side.self->verifier();
        const VerifierState& jv = side.other->verifier();
        if (iv.sub.probationTimer == 0 && (iv.sub.generation + 1) % 6 == jv.sub.generation) {
            iv.sub.generation = jv.sub.generation;
            iv.sub.dc = initDC(iv.rank, partition, params);
            iv.sub.probationTimer = params.pMax();
            events.softResets += 1;
            return events;
        }
    }

    // Generations differ and no soft reset is permissible.
    triggerReset(u, params);
    events.fullResets += 1;
    return events;
}

}  // namespace ssle
