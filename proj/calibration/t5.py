import numpy as np, sys
exec(open('p3.py').read().split('rng=')[0])
from scipy.stats import norm, kstest
rng=np.random.default_rng(11)
n=10000; R=300; s0=1.372494991910347366
e=np.array([np.sqrt(n)*(norm_psi(rng.standard_normal(n),1)-s0) for _ in range(R)])
print('gauss1 var', e.var(ddof=1), 'mean', e.mean(), 'KS', kstest(e, norm(scale=np.sqrt(0.95123792)).cdf).statistic)
for g in [1.25,1.5,1.75]:
    c=(g-1)/g; meds=[]
    for n in [1000,10000,100000]:
        errs=[abs(norm_psi(np.log1p(c*rng.uniform(size=n)**(-1/g)),1)-1) for _ in range(100)]
        meds.append(np.median(errs))
    sl=np.polyfit(np.log([1e3,1e4,1e5]), np.log(meds),1)[0]
    print(g, 'slope', sl, 'target', 1/g-1, meds)
