pub mod bench;
pub mod eval_content;
pub mod eval_style;
pub mod generate;
pub mod label;
pub mod predict;
pub mod simulate;
pub mod split;
pub mod train_predictor;
pub mod validate_sim;
