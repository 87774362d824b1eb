mod common;

use common::{central_diff, TestRng};
use proptest::prelude::*;
use tunnel_qnn::nn::{relu, relu_grad, softmax, softmax_cross_entropy, AdamState, DenseLayer};

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-6 * a.abs().max(b.abs()) + 1e-12
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[test]
fn dense_backward_matches_finite_differences() {
    let mut rng = TestRng::new(21);
    let h = 1e-3;
    for case in 0..50 {
        let (i, o) = (1 + rng.below(5), 1 + rng.below(5));
        let layer = DenseLayer::from_parts(i, o, rng.vec(i * o, -1.0, 1.0), rng.vec(o, -1.0, 1.0)).unwrap();
        let x = rng.vec(i, -1.0, 1.0);
        let c = rng.vec(o, -1.0, 1.0);
        let g = layer.backward(&x, &c).unwrap();

        let fd = central_diff(|x| dot(&layer.forward(x).unwrap(), &c), &x, h);
        for k in 0..i {
            assert!(rel_close(g.d_input[k], fd[k]), "case {case} input {k}");
        }
        let fd = central_diff(
            |w| dot(&DenseLayer::from_parts(i, o, w.to_vec(), layer.bias.clone()).unwrap().forward(&x).unwrap(), &c),
            &layer.weights,
            h,
        );
        for k in 0..i * o {
            assert!(rel_close(g.d_weights[k], fd[k]), "case {case} weight {k}");
        }
        let fd = central_diff(
            |b| dot(&DenseLayer::from_parts(i, o, layer.weights.clone(), b.to_vec()).unwrap().forward(&x).unwrap(), &c),
            &layer.bias,
            h,
        );
        for k in 0..o {
            assert!(rel_close(g.d_bias[k], fd[k]), "case {case} bias {k}");
        }
    }
}

#[test]
fn relu_gradient_matches_finite_differences_away_from_kink() {
    let mut rng = TestRng::new(22);
    let h = 1e-6;
    for _ in 0..50 {
        let mut x = rng.uniform(-2.0, 2.0);
        if x.abs() < 1e-3 {
            x += 0.01;
        }
        let fd = (relu(&[x + h])[0] - relu(&[x - h])[0]) / (2.0 * h);
        assert!(rel_close(relu_grad(&[x])[0], fd));
    }
    assert_eq!(relu_grad(&[0.0]), vec![0.0]);
}

#[test]
fn cross_entropy_gradient_matches_finite_differences() {
    let mut rng = TestRng::new(23);
    let h = 1e-5;
    for case in 0..50 {
        let logits = rng.vec(3, -3.0, 3.0);
        let label = rng.below(3);
        let (loss, grad) = softmax_cross_entropy(&logits, label).unwrap();
        assert!((loss - common::oracle_loss(&logits, label)).abs() < 1e-12);
        let fd = central_diff(|l| softmax_cross_entropy(l, label).unwrap().0, &logits, h);
        for k in 0..3 {
            assert!(rel_close(grad[k], fd[k]), "case {case} logit {k}: {} vs {}", grad[k], fd[k]);
        }
    }
}

#[test]
fn shape_errors_reported() {
    let layer = DenseLayer::zeros(2, 3);
    assert!(layer.forward(&[1.0]).is_err());
    assert!(layer.backward(&[1.0, 2.0], &[1.0]).is_err());
    assert!(softmax_cross_entropy(&[0.0, 1.0, 2.0], 3).is_err());
    assert!(AdamState::new(2, 0.01).step(&mut [0.0; 3], &[0.0; 3]).is_err());
}

proptest! {
    #[test]
    fn softmax_is_a_distribution(logits in prop::collection::vec(-700.0f64..700.0, 1..8)) {
        let p = softmax(&logits);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(p.iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn loss_is_non_negative(logits in prop::collection::vec(-50.0f64..50.0, 3), label in 0usize..3) {
        let (loss, grad) = softmax_cross_entropy(&logits, label).unwrap();
        prop_assert!(loss >= 0.0);
        prop_assert!(grad.iter().sum::<f64>().abs() < 1e-12);
    }

    #[test]
    fn adam_with_zero_lr_keeps_params(params in prop::collection::vec(-5.0f64..5.0, 1..10)) {
        let mut p = params.clone();
        let grads: Vec<f64> = params.iter().map(|v| v * 0.3 - 1.0).collect();
        let mut adam = AdamState::new(p.len(), 0.0);
        for _ in 0..3 {
            adam.step(&mut p, &grads).unwrap();
        }
        prop_assert_eq!(p, params);
    }
}
