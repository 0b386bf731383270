def calc(a, k):
    f=1 if len(a)%2 == 0 else 0
    s = 0
    for x in a:
        if x % k==0:
            s += x

    m2 = a[0]
    for w in a:
        if w>m2:
            m2 = w
    z=len(a)
    cnt=0
    while z>0:
        z//=2
        cnt+=1

    r2 = []
    for i in range(0, len(a)):
        if a[i]>k:
            r2.append(a[i]*2)
    return f + s+m2 + cnt+len(r2)

n, k = map(int, input().split())
a = list(map(int, input().split()))
print(calc(a, k))
