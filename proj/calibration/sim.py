import numpy as np, sys
def norm_psi(x, alpha):
    a=np.abs(x); m=a.max(); n=len(a)
    lo=m/np.log1p(n)**(1/alpha); hi=m/np.log1p(1/n)**(1/alpha)
    for _ in range(100):
        mid=0.5*(lo+hi)
        with np.errstate(over='ignore'):
            g=np.mean(np.expm1((a/mid)**alpha))
        if g>1: lo=mid
        else: hi=mid
        if hi-lo<1e-12*(1+hi): break
    return 0.5*(lo+hi)
if __name__!="__main__": raise SystemExit
rng=np.random.default_rng(int(sys.argv[2]))
case=sys.argv[1]; R=int(sys.argv[3]); n=int(sys.argv[4])
errs=[]
for r in range(R):
    if case=='exp': x=rng.exponential(size=n); s=norm_psi(x,1)-2; sc=np.sqrt(n/np.log(n))
    if case=='wei2': x=np.sqrt(rng.exponential(size=n)); s=norm_psi(x,2)-np.sqrt(2); sc=np.sqrt(n/np.log(n))
    if case=='gauss2': x=rng.standard_normal(n); s=norm_psi(x,2)-np.sqrt(8/3); sc=n**0.25*np.log(n)**-0.375
    if case=='gauss1': x=rng.standard_normal(n); s=norm_psi(x,1)-0.9435178675417358; sc=np.sqrt(n)
    errs.append(s*sc)
e=np.array(errs)
q=np.percentile(e,[25,50,75])
print(case, n, R, 'mean',e.mean(),'var',e.var(ddof=1),'median',q[1],'iqr-var',((q[2]-q[0])/1.349)**2)
