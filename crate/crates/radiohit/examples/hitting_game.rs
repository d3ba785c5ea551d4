//! The hitting game: a referee hides a target set, the player proposes
//! sets, and a proposal wins by intersecting the target in exactly one
//! element. Failed proposals teach the player nothing.
//!
//! ```bash
//! cargo run --example hitting_game
//! ```

use radiohit::hitting::{
    all_pairs_referee, play, play_multi, FixedReferee, MultiHittingConfig, Referee,
    SingletonSweepPlayer,
};
use radiohit::model::RandomTape;

fn main() {
    let k = 8;

    // A fixed pair target against the singleton sweep: wins at min(target).
    let mut player = SingletonSweepPlayer::new(k);
    let mut referee = FixedReferee::new([3, 6].into_iter().collect());
    let transcript = play(&mut player, &mut referee, k, true, 32).unwrap();
    println!(
        "fixed target {:?}: won in round {:?}",
        transcript.target,
        transcript.win_round()
    );
    let mut jsonl = Vec::new();
    transcript.write_jsonl(&mut jsonl).unwrap();
    print!("{}", String::from_utf8(jsonl).unwrap());

    // A uniformly drawn pair from the referee's private randomness.
    let tape = RandomTape::new(7);
    let mut referee = all_pairs_referee(k, &tape).unwrap();
    let mut player = SingletonSweepPlayer::new(k);
    let transcript = play(&mut player, &mut referee, k, true, 32).unwrap();
    println!(
        "\nrandom pair {:?}: won in round {:?}",
        transcript.target,
        transcript.win_round()
    );

    // The multi-instance game: consecutive sub-games, each won target
    // revealed as it falls.
    let config = MultiHittingConfig::new(16, 4).unwrap();
    let mut referees: Vec<Box<dyn Referee>> = (0..4)
        .map(|i| {
            Box::new(FixedReferee::new([(i % 4) + 1].into_iter().collect())) as Box<dyn Referee>
        })
        .collect();
    let mut player = SingletonSweepPlayer::new(config.instance_universe());
    let game = play_multi(&mut player, &mut referees, config, 64).unwrap();
    println!(
        "\nmulti-game over [{}] x {}: total rounds {:?}",
        config.instance_universe(),
        config.sub_games,
        game.rounds_to_win()
    );
    for (i, instance) in game.instances.iter().enumerate() {
        println!(
            "  instance {}: target {:?}, rounds {}..{}",
            i + 1,
            instance.target,
            instance.first_round,
            instance.win_round.unwrap()
        );
    }
}
