//! The collision-fiction player for collision-detection algorithms: every
//! simulated broadcaster is told "collision", everyone else "silence". For
//! two-element targets that fiction is exactly the target execution's
//! truth; for three it breaks, and the consistency oracle catches it.
//!
//! ```bash
//! cargo run --example cd_reduction_consistency
//! ```

use std::sync::Arc;

use radiohit::algorithms::cd_binary_search_wakeup;
use radiohit::hitting::{play, FixedReferee};
use radiohit::model::{
    Algorithm, ModelConfig, NodeAction, NodeCtx, RandomTape, RoundObservation, TapeStream,
    DEFAULT_CHANNEL,
};
use radiohit::reductions::{check_consistency, target_execution, CdPlayer};

fn main() {
    let k = 16;
    let config = ModelConfig::single_channel_cd();
    let algorithm = cd_binary_search_wakeup(k).unwrap();
    let tape = RandomTape::new(0);

    println!("pair targets: the fiction holds through the win\n");
    for target in [[3usize, 5], [9, 10], [1, 16]] {
        let target: std::collections::BTreeSet<usize> = target.into_iter().collect();
        let reference =
            target_execution(algorithm.as_ref(), k, &target, &config, &tape, 64).unwrap();
        let mut player = CdPlayer::new(algorithm.clone(), k, config, &tape).unwrap();
        let transcript = play(
            &mut player,
            &mut FixedReferee::new(target.clone()),
            k,
            true,
            1024,
        )
        .unwrap();
        println!(
            "  target {target:?}: solve round {:?}, win round {:?}, divergence {:?}",
            reference.solved_round(),
            transcript.win_round(),
            check_consistency(&player.simulation_trace(), &reference, &target)
        );
    }

    // Negative control: with three target nodes, two constant transmitters
    // collide forever and the third really hears those collisions — but the
    // fiction feeds it silence.
    struct TwoLoud;
    impl Algorithm for TwoLoud {
        fn decide(
            &self,
            ctx: &NodeCtx,
            _h: &[RoundObservation],
            _t: &mut TapeStream,
        ) -> NodeAction {
            if ctx.id <= 2 {
                NodeAction::Transmit {
                    channel: DEFAULT_CHANNEL,
                    payload: vec![],
                }
            } else {
                NodeAction::listen_default()
            }
        }
    }
    let adversarial: Arc<dyn Algorithm> = Arc::new(TwoLoud);
    let target: std::collections::BTreeSet<usize> = [1, 2, 3].into_iter().collect();
    let reference = target_execution(adversarial.as_ref(), k, &target, &config, &tape, 8).unwrap();
    let mut player = CdPlayer::new(adversarial, k, config, &tape).unwrap();
    let transcript = play(
        &mut player,
        &mut FixedReferee::new(target.clone()),
        k,
        false,
        8,
    )
    .unwrap();
    println!(
        "\nthree-element control: win {:?}, divergence detected at round {:?}",
        transcript.win_round(),
        check_consistency(&player.simulation_trace(), &reference, &target)
    );
    println!("the restriction to two-element targets is doing real work");
}
