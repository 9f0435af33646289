use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn run(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let module = wrap_pymodule!(privtrade::privtrade)(py);
        let globals = PyDict::new(py);
        globals.set_item("pt", module).unwrap();
        if let Err(e) = py.run(code, Some(&globals), None) {
            e.print(py);
            panic!("python snippet failed: {e}");
        }
    });
}

#[test]
fn solves_reference_scenario() {
    run(c"
s = pt.Scenario.sensitivity_reference()
sol = pt.solve_tradeoff(s)
assert sol['status'] == 'INTERIOR', sol
assert abs(sol['l_opt'] - 3796.918) < 1e-2, sol
assert pt.classify_regime(s) == 'NU_LT_1'
assert abs(pt.surplus_gradient(s, sol['l_opt'])) < 1e-9
assert abs(pt.net_surplus(s, sol['l_opt']) - sol['surplus']) < 1e-9
");
}

#[test]
fn scenario_round_trips_through_dict() {
    run(c"
s = pt.Scenario.case_study(10000.0, 0.5)
d = s.to_dict()
assert set(d) == {'q_star', 'p_star', 'price', 'nu', 'theta', 'alpha_n', 'l_n', 'pi_s', 'pi_c_star'}
assert pt.Scenario.from_dict(d) == s
assert pt.Scenario(**d) == s
t = s.with_factor('price', 0.6)
assert t.price == 0.6 and t.get('price') == 0.6 and t != s
assert 'price=0.5' in repr(s)
");
}

#[test]
fn invalid_input_raises_model_error() {
    run(c"
d = pt.Scenario.sensitivity_reference().to_dict()
d['theta'] = 1.5
try:
    pt.Scenario(**d)
    raise AssertionError('accepted theta=1.5')
except pt.ModelError as e:
    assert 'theta' in str(e)
    assert isinstance(e, ValueError)
try:
    pt.Scenario.sensitivity_reference().get('gamma')
    raise AssertionError('accepted unknown factor')
except pt.ModelError:
    pass
assert issubclass(pt.NumericError, ArithmeticError)
");
}

#[test]
fn analysis_functions_return_plain_data() {
    run(c"
s = pt.Scenario.sensitivity_reference()
bars = pt.tornado(s)
mags = [b['magnitude'] for b in bars]
assert mags == sorted(mags, reverse=True) and len(bars) == 8
plan = pt.default_plan()
assert len(pt.tornado(s, plan[:2])) == 2
sweep = pt.price_sweep(s, pt.price_grid(0.0, 0.9, 10))
assert len(sweep['l_opt']) == 10
assert all(a >= b for a, b in zip(sweep['l_opt'], sweep['l_opt'][1:]))
choice = pt.solve_discrete(s, [1000.0, 2500.0, 5000.0])
assert choice['index'] == 2 and choice['loss'] == 5000.0
q = pt.discrete_quasi_elasticity(s, 'theta', 0.2)
assert q['kind'] == 'QUASI_ELASTICITY'
sec = pt.secure_optimal_loss(s.with_factor('pi_s', 0.0))
assert 0.0 <= sec['clamped'] <= s.l_n
assert abs(pt.pareto_privacy_parameter(0.8, 0.2) - 0.138647) < 1e-6
g = pt.oracle_grid_argmax(s, 100001)
assert abs(g - 3796.918) <= 0.2
");
}
