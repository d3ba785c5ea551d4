//! The two-node channel-comparison gadget: a pair of single-channel nodes
//! with collision detection simulate one round of a C-channel algorithm by
//! spelling out their chosen channel numbers bit by bit. A differing bit is
//! a lone transmission (wake-up solved); all bits matching proves the
//! channels equal.
//!
//! ```bash
//! cargo run --example cdmc_gadget
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use radiohit::model::{
    Algorithm, NodeAction, NodeCtx, NodeId, RandomTape, RoundObservation, TapeStream,
};
use radiohit::reductions::{cdmc_pair_simulator, group_length, run_pair_wakeup};

struct FixedChannels {
    map: BTreeMap<NodeId, usize>,
}

impl Algorithm for FixedChannels {
    fn decide(&self, ctx: &NodeCtx, _h: &[RoundObservation], _t: &mut TapeStream) -> NodeAction {
        NodeAction::Transmit {
            channel: self.map[&ctx.id],
            payload: vec![],
        }
    }
}

fn main() {
    let channels = 8;
    let tape = RandomTape::new(0);
    println!(
        "C = {channels}: groups of {} rounds (1 opening + {} channel bits)\n",
        group_length(channels),
        group_length(channels) - 1
    );
    println!("gadget outcome over all channel pairs (rows: node 1, columns: node 2):");
    print!("      ");
    for cj in 1..=channels {
        print!("  c={cj}");
    }
    println!();
    for ci in 1..=channels {
        print!("  c={ci} ");
        for cj in 1..=channels {
            let inner: Arc<dyn Algorithm> = Arc::new(FixedChannels {
                map: [(1, ci), (2, cj)].into_iter().collect(),
            });
            let wrapped = cdmc_pair_simulator(inner, channels).unwrap();
            let trace = run_pair_wakeup(
                wrapped.as_ref(),
                2,
                (1, 2),
                &tape,
                group_length(channels) + 1,
            )
            .unwrap();
            match trace.solved_round() {
                // A lone transmission during the group: channels differed.
                Some(round) => print!("  r={round}"),
                // Survived every bit: equal channels, collision simulated.
                None => print!("    =="),
            }
        }
        println!();
    }
    println!("\n'==' on exactly the diagonal: equality is decided correctly");
}
