#include "macc/sim/simulation.hpp"

#include <stdexcept>

namespace macc::sim {

namespace {

constexpr int kEdgeQueueCapacity = 1'000'000;

class IngressOutlet : public transport::PacketOutlet {
public:
    IngressOutlet(SimCounters& counters, Link& first_hop, std::uint64_t& id_source)
        : counters_(counters), first_hop_(first_hop), id_source_(id_source) {}

    void send(Packet pkt, SimTime) override {
        pkt.id = id_source_++;
        ++counters_.packets_sent;
        first_hop_.offer(pkt);
    }

private:
    SimCounters& counters_;
    Link& first_hop_;
    std::uint64_t& id_source_;
};

}  // namespace

void SimulationConfig::validate() const {
    topo.validate();
    if (!flow_kinds.empty() && static_cast<int>(flow_kinds.size()) != topo.n_flows) {
        throw std::invalid_argument("flow_kinds must be empty or have n_flows entries");
    }
    if (transport.segment_size <= 0) {
        throw std::invalid_argument("transport.segment_size must be > 0");
    }
    if (transport.initial_cwnd_segments < 1) {
        throw std::invalid_argument("transport.initial_cwnd_segments must be >= 1");
    }
}

Link::Link(std::string name, LinkConfig cfg, std::unique_ptr<aqm::QueueDisc> queue,
           Simulation& sim)
    : name_(std::move(name)), cfg_(cfg), queue_(std::move(queue)), sim_(sim) {}

void Link::set_destination(std::function<void(const Packet&)> deliver) {
    deliver_ = std::move(deliver);
}

void Link::offer(const Packet& pkt) {
    if (queue_->admit(pkt, sim_.now(), sim_.rng()) == aqm::AdmitResult::Enqueued) {
        try_transmit();
    }
}

void Link::try_transmit() {
    if (busy_) return;
    auto pkt = queue_->dequeue(sim_.now());
    if (!pkt) return;
    busy_ = true;
    ++sim_.on_wire_;
    const double serialization_s = static_cast<double>(pkt->size_bytes) * 8.0 / cfg_.rate_bps;
    sim_.events_.schedule(sim_.now() + SimTime::from_seconds(serialization_s),
                          [this, p = *pkt]() mutable { on_serialized(std::move(p)); });
}

void Link::on_serialized(Packet pkt) {
    busy_ = false;
    if (cfg_.per > 0.0 && pkt.kind == PacketKind::Data && sim_.rng().bernoulli(cfg_.per)) {
        pkt.corrupt = true;
    }
    if (this == &sim_.forward_bottleneck() && pkt.kind == PacketKind::Data) {
        ++sim_.counters_.bottleneck_data_packets;
    }
    sim_.events_.schedule(sim_.now() + SimTime::from_seconds(cfg_.prop_delay_s),
                          [this, p = std::move(pkt)] {
                              --sim_.on_wire_;
                              if (p.corrupt) {
                                  ++sim_.counters_.corrupted;
                              } else {
                                  deliver_(p);
                              }
                          });
    try_transmit();
}

Simulation::Simulation(const SimulationConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), rng_(seed) {
    cfg_.validate();
    if (cfg_.transport.fixed_rate_bps <= 0.0) {
        // Fair-share default when the scenario does not pin a rate.
        cfg_.transport.fixed_rate_bps =
            cfg_.topo.bottleneck_link.rate_bps / cfg_.topo.n_flows;
    }
    build();
}

void Simulation::build() {
    const int n = cfg_.topo.n_flows;
    const LinkConfig& edge = cfg_.topo.edge_link;
    const LinkConfig& bn = cfg_.topo.bottleneck_link;

    auto edge_queue = [&] {
        return aqm::make_queue(aqm::AqmConfig{}, kEdgeQueueCapacity, 0.0);
    };
    auto bottleneck_queue = [&] {
        const double idle_pkt_s = 1500.0 * 8.0 / bn.rate_bps;
        return aqm::make_queue(cfg_.aqm, cfg_.topo.queue_capacity, idle_pkt_s);
    };

    // Layout: [0..n) sender->r1, [n..2n) r2->receiver, [2n] r1->r2,
    // [2n+1] r2->r1, [2n+2..3n+2) receiver->r2, [3n+2..4n+2) r1->sender.
    for (int i = 0; i < n; ++i)
        links_.push_back(std::make_unique<Link>("sender" + std::to_string(i) + "->r1", edge,
                                                edge_queue(), *this));
    for (int i = 0; i < n; ++i)
        links_.push_back(std::make_unique<Link>("r2->receiver" + std::to_string(i), edge,
                                                edge_queue(), *this));
    links_.push_back(std::make_unique<Link>("r1->r2", bn, bottleneck_queue(), *this));
    links_.push_back(std::make_unique<Link>("r2->r1", bn, bottleneck_queue(), *this));
    for (int i = 0; i < n; ++i)
        links_.push_back(std::make_unique<Link>("receiver" + std::to_string(i) + "->r2", edge,
                                                edge_queue(), *this));
    for (int i = 0; i < n; ++i)
        links_.push_back(std::make_unique<Link>("r1->sender" + std::to_string(i), edge,
                                                edge_queue(), *this));

    // Router 1: data from senders joins the forward bottleneck; acks off
    // the reverse bottleneck fan out to their sender's edge.
    auto router1_ingress = [this, n](const Packet& p) {
        if (p.kind == PacketKind::Data) {
            links_[2 * n]->offer(p);
        } else {
            links_[3 * n + 2 + p.flow]->offer(p);
        }
    };
    auto router2_ingress = [this, n](const Packet& p) {
        if (p.kind == PacketKind::Data) {
            links_[n + p.flow]->offer(p);
        } else {
            links_[2 * n + 1]->offer(p);
        }
    };

    for (int i = 0; i < n; ++i) links_[i]->set_destination(router1_ingress);
    for (int i = 0; i < n; ++i) links_[2 * n + 2 + i]->set_destination(router2_ingress);
    links_[2 * n]->set_destination(router2_ingress);
    links_[2 * n + 1]->set_destination(router1_ingress);

    for (int i = 0; i < n; ++i) {
        transport::TransportParams params = cfg_.transport;
        if (!cfg_.flow_kinds.empty()) params.kind = cfg_.flow_kinds[i];

        outlets_.push_back(
            std::make_unique<IngressOutlet>(counters_, *links_[i], next_packet_id_));
        senders_.push_back(
            std::make_unique<transport::TcpSender>(i, params, events_, *outlets_.back()));

        outlets_.push_back(std::make_unique<IngressOutlet>(counters_, *links_[2 * n + 2 + i],
                                                           next_packet_id_));
        receivers_.push_back(
            std::make_unique<transport::TcpReceiver>(i, events_, *outlets_.back()));

        links_[n + i]->set_destination([this, i](const Packet& p) {
            ++counters_.delivered;
            receivers_[i]->on_data_packet(p);
        });
        links_[3 * n + 2 + i]->set_destination([this, i](const Packet& p) {
            ++counters_.delivered;
            senders_[i]->on_ack_packet(p);
        });
    }

    for (int i = 0; i < n; ++i) {
        events_.schedule(SimTime{}, [this, i] { senders_[i]->start(); });
    }
}

void Simulation::apply_aqm_action(int action) {
    const int n = cfg_.topo.n_flows;
    for (Link* l : {links_[2 * n].get(), links_[2 * n + 1].get()}) {
        if (auto* rl = dynamic_cast<aqm::RlQueue*>(&l->queue())) {
            rl->apply_action(action);
        } else {
            throw std::logic_error("apply_aqm_action: bottleneck discipline is not learned");
        }
    }
}

void Simulation::apply_tcp_action_all(int action) {
    for (auto& s : senders_) {
        if (s->kind() == transport::TransportKind::RlAgent) s->apply_action(action);
    }
}

std::uint64_t Simulation::queue_drops_total() const {
    std::uint64_t total = 0;
    for (const auto& l : links_) total += l->queue().drops().total();
    return total;
}

std::int64_t Simulation::in_network_packets() const {
    std::int64_t q = 0;
    for (const auto& l : links_) q += l->queue().occupancy();
    return q + on_wire_;
}

bool Simulation::conservation_holds() const {
    return counters_.packets_sent == counters_.delivered + queue_drops_total() +
                                         counters_.corrupted +
                                         static_cast<std::uint64_t>(in_network_packets());
}

std::unique_ptr<Simulation> build_dumbbell(const SimulationConfig& cfg, std::uint64_t seed) {
    return std::make_unique<Simulation>(cfg, seed);
}

}  // namespace macc::sim
