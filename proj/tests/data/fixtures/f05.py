def f(arr, k):
    r=len(arr)
    cnt=0
    while r > 0:
        r //= 2
        cnt+=1
    par=1 if len(arr)%2==0 else 0
    m2=arr[0]
    for t in arr:
        if t>m2:
            m2 = t
    return cnt+par + m2

n, k = map(int, input().split())
arr = list(map(int, input().split()))
print(f(arr, k))
