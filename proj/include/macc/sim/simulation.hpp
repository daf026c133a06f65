#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "macc/aqm/factory.hpp"
#include "macc/aqm/queue_disc.hpp"
#include "macc/sim/config.hpp"
#include "macc/sim/event_queue.hpp"
#include "macc/sim/packet.hpp"
#include "macc/sim/rng.hpp"
#include "macc/transport/receiver.hpp"
#include "macc/transport/sender.hpp"

namespace macc::sim {

struct SimulationConfig {
    TopologyConfig topo{};
    aqm::AqmConfig aqm{};
    transport::TransportParams transport{};
    /// Optional per-flow kind override; empty means every flow uses
    /// transport.kind.
    std::vector<transport::TransportKind> flow_kinds{};

    void validate() const;
};

struct SimCounters {
    std::uint64_t packets_sent = 0;
    std::uint64_t delivered = 0;
    std::uint64_t corrupted = 0;
    std::uint64_t bottleneck_data_packets = 0;  // data packets serialized on the forward bottleneck
};

class Simulation;

/// Unidirectional point-to-point channel: an egress queue, a serializer
/// (one packet on the wire at a time), and fixed propagation.
class Link {
public:
    Link(std::string name, LinkConfig cfg, std::unique_ptr<aqm::QueueDisc> queue,
         Simulation& sim);

    void set_destination(std::function<void(const Packet&)> deliver);

    /// Entry point: runs the queue's admission, kicks the serializer.
    void offer(const Packet& pkt);

    aqm::QueueDisc& queue() { return *queue_; }
    const aqm::QueueDisc& queue() const { return *queue_; }
    const std::string& name() const { return name_; }
    const LinkConfig& config() const { return cfg_; }

private:
    void try_transmit();
    void on_serialized(Packet pkt);

    std::string name_;
    LinkConfig cfg_;
    std::unique_ptr<aqm::QueueDisc> queue_;
    Simulation& sim_;
    std::function<void(const Packet&)> deliver_;
    bool busy_ = false;
};

/// The dumbbell: N senders and N receivers joined by two routers over a
/// shared bottleneck. Both routers front their bottleneck-facing queue
/// with the configured discipline; edge queues are effectively unbounded
/// tail-drop. The bottleneck error model corrupts data packets i.i.d.;
/// acks ride clean.
class Simulation {
public:
    Simulation(const SimulationConfig& cfg, std::uint64_t seed);

    EventQueue& events() { return events_; }
    Rng& rng() { return rng_; }
    SimTime now() const { return events_.now(); }
    void run_until(SimTime t) { events_.run_until(t); }

    int n_flows() const { return cfg_.topo.n_flows; }
    int n_nodes() const { return 2 * cfg_.topo.n_flows + 2; }
    int n_forward_links() const { return 2 * cfg_.topo.n_flows + 1; }

    transport::TcpSender& sender(int flow) { return *senders_.at(flow); }
    transport::TcpReceiver& receiver(int flow) { return *receivers_.at(flow); }

    /// The router-1 queue in front of the forward bottleneck — the queue
    /// the network-layer agent observes and controls.
    aqm::QueueDisc& bottleneck_queue() { return forward_bottleneck().queue(); }

    /// Applies the network-layer action to both bottleneck-facing queues.
    /// Only meaningful when the configured discipline is the learned one.
    void apply_aqm_action(int action);

    /// Applies the transport-layer action to every learned flow.
    void apply_tcp_action_all(int action);

    const SimCounters& counters() const { return counters_; }
    std::uint64_t queue_drops_total() const;
    std::int64_t in_network_packets() const;

    /// sent == delivered + queue drops + corrupted + still in the network.
    bool conservation_holds() const;

    const SimulationConfig& config() const { return cfg_; }

private:
    friend class Link;

    Link& forward_bottleneck() { return *links_[2 * cfg_.topo.n_flows]; }
    const Link& forward_bottleneck() const { return *links_[2 * cfg_.topo.n_flows]; }

    void build();
    std::uint64_t next_packet_id() { return next_packet_id_++; }

    SimulationConfig cfg_;
    EventQueue events_;
    Rng rng_;
    SimCounters counters_;
    std::int64_t on_wire_ = 0;
    std::uint64_t next_packet_id_ = 1;

    // links_[0..N-1]   sender i -> router1        (forward edges)
    // links_[N..2N-1]  router2 -> receiver i      (forward edges)
    // links_[2N]       router1 -> router2         (forward bottleneck)
    // links_[2N+1]     router2 -> router1         (reverse bottleneck)
    // links_[2N+2..]   receiver i -> router2, router1 -> sender i (reverse edges)
    std::vector<std::unique_ptr<Link>> links_;
    std::vector<std::unique_ptr<transport::TcpSender>> senders_;
    std::vector<std::unique_ptr<transport::TcpReceiver>> receivers_;
    std::vector<std::unique_ptr<transport::PacketOutlet>> outlets_;
};

/// Validates the scenario and assembles the topology with all senders
/// scheduled to start at t = 0.
std::unique_ptr<Simulation> build_dumbbell(const SimulationConfig& cfg, std::uint64_t seed);

}  // namespace macc::sim
