"""Reference values computed once with mpmath at 40 significant digits and frozen here.

Regenerate with mpmath (loggamma, rgamma, hyp1f1, hyperu, besselj, coulombf, qp, qhyper)
if an entry needs to change; never edit a value by hand.
"""
LOG_GAMMA = [((2.5+1j), (0.04810862962355502+0.7401435969990889j)), ((-1.5+0.3j), (0.49135049161136535-6.0711816937182865j)), ((10+20j), (-1.702980443956511+52.660660425584716j)), ((0.1-3j), (-4.23221870026056+0.34534020121158043j))]
RGAMMA = [((-2.5+0j), (-1.057855469152043+0j)), ((0.3+0.7j), (0.37312009374248767+1.0322858045284202j)), ((7.5+0j), (0.0005344009079373427+0j))]
HYP1F1 = [((0.5, 1.5, 2.0), (2.3644538928052095+0j)), (((0.3+0.2j), (1.7-0.4j), (-1.2+0.8j)), (0.7901691057861991-0.06535760780712317j)), ((-2.5, 0.5, 3.0), (3.3930097980128706+0j)), (((1+1j), (2+0j), 3j), (-0.0007534147792159551-0.010624218196129846j))]
TRICOMI_U = [((0.5, 0.5, 1.0), (0.7578721561413121+0j)), (((0.3+0.2j), 0.7, (1.5+0.5j)), (0.8308907621869976-0.20809412506264166j)), ((1.2, -0.4, 2.0), (0.1843758782222855+0j))]
BESSEL_J = [((0.5, 1.0), (0.6713967071418031+0j)), (((1.3+0.2j), (2-0.5j)), (0.6307868050461587-0.09337039522273445j)), ((2, 3.0), (0.4860912605858911+0j)), ((-0.7, 1.1), (0.05280732531738894+0j))]
COULOMB_F = [((0, 0, 1.0), (0.8414709848078965+0j)), ((1, 0.5, 2.0), (0.6185123212891975+0j)), ((0.5, -1.0, 1.5), (0.7099678108218298+0j)), ((2, 1.5, 0.7), (0.0019347054209570514+0j))]
POCH_Q = [((0.5, 0.5, 3), (0.328125+0j)), (((0.3+0.4j), 0.7, 5), (0.11429745333488305-0.48751841871995605j)), ((2.0, 0.3, 4), (-0.310288+0j))]
POCH_Q_INF = [((0.5, 0.5), (0.2887880950866024+0j)), (((0.3+0.4j), 0.7), (-0.00023232506535290204-0.4242174750760209j)), ((-1.5, 0.2), (3.4968042500160914+0j)), ((0.9, 0.95), (3.012223764201204e-12+0j))]
PHI01 = [((0.2, 0.5, 1.5), (7.074357372543054+0j)), (((0.3+0.1j), 0.7, (-2+1j)), (1.6126404842795392+0.3957881560761645j)), ((0.0, 0.25, -0.125), (0.8347215333103486+0j))]
PHI11 = [((0.4, 0.2, 0.5, 1.5), (0.08179062374519883+0j)), (((0.3+0.1j), -0.6, 0.7, (-2+1j)), (-0.6771992806111153-18.01236341165952j))]
JFRAK = [((0.5, 1.2, 0.5), (0.7642551242224209+0j)), ((2, 0.8, 0.3), (0.04112930879487452+0j)), (((0.3+0.4j), (1.5-0.2j), 0.6), (0.1455715005666033+0.7866740508355867j)), ((7, 3.0, 0.5), (0.0035383455532240365+0j))]
GEOMETRIC_TAIL = [((0.5, 1.0), (0.35551146924815186+0j)), ((0.3, 1.7), (0.053997859917812564+0j))]
BESSEL_TAIL = [((0.5, 0.7), (0.7038926642774715+0j)), ((2.0, 1.3), (0.5431631381281096+0j)), (((1.5+0.5j), (0.4-0.3j)), (0.9881870651233338+0.09684936454504547j))]
QP_HALF = (0.2887880950866024+0j)
